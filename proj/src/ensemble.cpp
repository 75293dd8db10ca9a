#include "opdeloc/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <stdexcept>

#include <omp.h>

namespace opdeloc {

Rng realization_stream(std::uint64_t master_seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

EnsembleStats run_realizations(int realizations, std::uint64_t master_seed, const Observable& observable,
                               int threads, bool keep_rows) {
    if (realizations < 1) throw std::invalid_argument("run_ensemble: realizations must be >= 1");
    std::vector<std::vector<double>> rows(realizations);
    std::vector<char> failed(realizations, 0);
    std::vector<std::string> errors(realizations);
    const int workers = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int r = 0; r < realizations; ++r) {
        try {
            Rng rng = realization_stream(master_seed, static_cast<std::uint64_t>(r));
            rows[r] = observable(r, rng);
        } catch (const std::exception& e) {
            failed[r] = 1;
            errors[r] = e.what();
        }
    }

    EnsembleStats out;
    std::size_t width = 0;
    for (int r = 0; r < realizations; ++r) {
        if (failed[r]) {
            ++out.failures;
            continue;
        }
        if (width == 0) width = rows[r].size();
        if (rows[r].size() != width) throw std::logic_error("run_ensemble: observable changed its length");
    }
    if (out.failures * 100 > realizations || out.failures == realizations) {
        std::ostringstream msg;
        msg << "run_ensemble: " << out.failures << " of " << realizations << " realizations failed";
        for (int r = 0; r < realizations; ++r)
            if (failed[r]) {
                msg << " (first: realization " << r << ": " << errors[r] << ")";
                break;
            }
        throw std::runtime_error(msg.str());
    }

    // Welford fold in index order.
    out.mean.assign(width, 0.0);
    std::vector<double> m2(width, 0.0);
    for (int r = 0; r < realizations; ++r) {
        if (failed[r]) continue;
        ++out.realizations;
        const double n = out.realizations;
        for (std::size_t i = 0; i < width; ++i) {
            const double delta = rows[r][i] - out.mean[i];
            out.mean[i] += delta / n;
            m2[i] += delta * (rows[r][i] - out.mean[i]);
        }
    }
    out.stderr_.assign(width, 0.0);
    if (out.realizations > 1) {
        const double n = out.realizations;
        for (std::size_t i = 0; i < width; ++i) out.stderr_[i] = std::sqrt(m2[i] / (n - 1.0) / n);
    }
    if (keep_rows) {
        for (int r = 0; r < realizations; ++r)
            if (!failed[r]) out.rows.push_back(std::move(rows[r]));
    }
    return out;
}

std::string GraphFamily::label() const {
    switch (kind) {
        case Kind::complete: return "full";
        case Kind::star: return "star";
        case Kind::ring: return "ring";
        case Kind::watts_strogatz: break;
    }
    std::ostringstream s;
    s << "ws(k=" << ws.half_degree << ",p=" << ws.rewire_prob << ")";
    return s.str();
}

Graph GraphFamily::draw(int num_modes, Rng& rng) const {
    switch (kind) {
        case Kind::complete: return make_complete(num_modes);
        case Kind::star: return make_star(num_modes);
        case Kind::ring: return make_ring(num_modes);
        case Kind::watts_strogatz: return watts_strogatz(num_modes, ws, rng);
    }
    throw std::logic_error("unknown graph family");
}

CouplingMatrix draw_quench(const EnsembleSpec& spec, Rng& rng, const Graph* fixed_graph) {
    if (fixed_graph && !spec.family.random())
        return rescale_to_unit_bandwidth(sample_couplings(*fixed_graph, rng, spec.variance, spec.distribution));
    const Graph g = spec.family.draw(spec.num_modes, rng);
    return rescale_to_unit_bandwidth(sample_couplings(g, rng, spec.variance, spec.distribution));
}

namespace {

LanczosOptions horizon_options(const EnsembleSpec& spec) {
    LanczosOptions opts;
    double t_max = 0.0;
    for (double t : spec.times) t_max = std::max(t_max, std::abs(t));
    opts.max_dim = spec.max_krylov_dim > 0 ? spec.max_krylov_dim : krylov_dim_for_horizon(t_max, 1.0);
    return opts;
}

std::vector<double> ck_row(const CouplingMatrix& j, int size, const std::vector<double>& times,
                           const LanczosOptions& opts) {
    const auto v = basis_vector(j.num_modes(), MajoranaString::prefix(size));
    return k_complexity(evolve_amplitudes(lanczos(j, v, opts), times)).ck;
}

CurveResult slice(const EnsembleStats& stats, const std::vector<double>& times, std::size_t offset) {
    CurveResult c;
    c.times = times;
    c.mean.assign(stats.mean.begin() + offset, stats.mean.begin() + offset + times.size());
    c.stderr_.assign(stats.stderr_.begin() + offset, stats.stderr_.begin() + offset + times.size());
    c.realizations = stats.realizations;
    return c;
}

std::optional<Graph> fixed_graph(const EnsembleSpec& spec) {
    if (spec.family.random()) return std::nullopt;
    Rng unused(0);
    return spec.family.draw(spec.num_modes, unused);
}

}  // namespace

CurveResult run_ck_curve(const EnsembleSpec& spec) {
    const auto opts = horizon_options(spec);
    const auto graph = fixed_graph(spec);
    const auto stats = run_realizations(
        spec.realizations, spec.master_seed,
        [&](int, Rng& rng) { return ck_row(draw_quench(spec, rng, graph ? &*graph : nullptr), spec.size, spec.times, opts); },
        spec.threads);
    return slice(stats, spec.times, 0);
}

RatioEstimate run_ratio(const EnsembleSpec& spec) {
    const auto opts = horizon_options(spec);
    const auto graph = fixed_graph(spec);
    const std::size_t n = spec.times.size();
    const auto stats = run_realizations(
        spec.realizations, spec.master_seed,
        [&](int, Rng& rng) {
            const auto j = draw_quench(spec, rng, graph ? &*graph : nullptr);
            auto row = ck_row(j, 1, spec.times, opts);
            const auto large = ck_row(j, spec.num_modes / 2, spec.times, opts);
            row.insert(row.end(), large.begin(), large.end());
            return row;
        },
        spec.threads, true);

    RatioEstimate out;
    out.small = slice(stats, spec.times, 0);
    out.large = slice(stats, spec.times, n);
    auto ratio_of = [&](const std::vector<double>& mean) {
        ComplexitySeries s{spec.times, {mean.begin(), mean.begin() + n}, {}};
        ComplexitySeries l{spec.times, {mean.begin() + n, mean.end()}, {}};
        return delocalization_ratio(l, s, spec.t_lo, spec.t_hi);
    };
    out.ratio = ratio_of(stats.mean);

    const int count = static_cast<int>(stats.rows.size());
    const int blocks = std::min(20, count);
    if (blocks >= 2) {
        std::vector<double> total(2 * n, 0.0);
        for (const auto& row : stats.rows)
            for (std::size_t i = 0; i < 2 * n; ++i) total[i] += row[i];
        std::vector<double> estimates;
        for (int b = 0; b < blocks; ++b) {
            const int lo = b * count / blocks, hi = (b + 1) * count / blocks;
            std::vector<double> mean = total;
            for (int r = lo; r < hi; ++r)
                for (std::size_t i = 0; i < 2 * n; ++i) mean[i] -= stats.rows[r][i];
            for (double& m : mean) m /= static_cast<double>(count - (hi - lo));
            estimates.push_back(ratio_of(mean).ratio);
        }
        double avg = 0.0;
        for (double e : estimates) avg += e;
        avg /= blocks;
        double var = 0.0;
        for (double e : estimates) var += (e - avg) * (e - avg);
        out.stderr_ = std::sqrt(var * (blocks - 1.0) / blocks);
    }
    return out;
}

BatteryEstimate run_battery(const EnsembleSpec& spec) {
    const auto graph = fixed_graph(spec);
    const auto stats = run_realizations(
        spec.realizations, spec.master_seed,
        [&](int, Rng& rng) {
            const auto j = draw_quench(spec, rng, graph ? &*graph : nullptr);
            return battery_return_amplitude(j, spec.axis, spec.times, spec.path);
        },
        spec.threads);

    BatteryEstimate out;
    out.phi0 = slice(stats, spec.times, 0);
    out.power = out.phi0;
    const double e0 = battery_ground_energy(spec.num_modes);
    for (std::size_t i = 0; i < spec.times.size(); ++i) {
        const double t = spec.times[i];
        out.power.mean[i] = t > 0.0 ? (out.phi0.mean[i] - 1.0) / t * e0 : 0.0;
        out.power.stderr_[i] = t > 0.0 ? out.phi0.stderr_[i] / t * std::abs(e0) : 0.0;
    }
    const auto peak = max_power(out.power.times, out.power.mean);
    out.p_max = peak.p_max;
    out.t_star = peak.t_star;
    std::size_t best = 0;
    for (std::size_t i = 1; i < spec.times.size(); ++i)
        if (std::abs(spec.times[i] - peak.t_star) < std::abs(spec.times[best] - peak.t_star)) best = i;
    out.p_max_stderr = out.power.stderr_[best];
    return out;
}

}  // namespace opdeloc
