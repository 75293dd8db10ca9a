#include <algorithm>
#include <cmath>
#include <sstream>

#include "commands.hpp"
#include "opdeloc/dense_oracle.hpp"
#include "opdeloc/ensemble.hpp"
#include "opdeloc/star_exact.hpp"

namespace opdeloc::cli {

namespace {

class Report {
public:
    explicit Report(std::ostream& out) : out_(out) {}

    void check(bool ok, const std::string& name, const std::string& detail) {
        out_ << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
        failures_ += ok ? 0 : 1;
    }
    void within(double value, double expected, double tol, const std::string& name) {
        std::ostringstream d;
        d << "got " << value << " expected " << expected << " |diff| " << std::abs(value - expected) << " tol " << tol;
        check(std::abs(value - expected) <= tol, name, d.str());
    }
    void sigma(double mean, double stderr_, double expected, const std::string& name) {
        std::ostringstream d;
        const double z = std::abs(mean - expected) / std::max(stderr_, 1e-12);
        d << "mean " << mean << " +- " << stderr_ << " expected " << expected << " (" << z << " sigma)";
        check(z <= 3.0, name, d.str());
    }
    int exit_code() const { return failures_ ? 1 : 0; }

private:
    std::ostream& out_;
    int failures_ = 0;
};

std::vector<double> leaf_couplings(const CouplingMatrix& j) {
    std::vector<double> c;
    for (int i = 0; i + 1 < j.num_modes(); ++i) c.push_back(j(i, j.num_modes() - 1));
    return c;
}

std::string tag(const std::string& what, int l, int s = -1) {
    std::ostringstream o;
    o << what << " L=" << l;
    if (s >= 0) o << " s=" << s;
    return o.str();
}

}  // namespace

int cmd_validate_star(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    Report report(ctx.log);
    const int realizations = cfg.integer("validate", "star_realizations");
    const auto seed = std::stoull(cfg.text("general", "seed"));
    const int threads = cfg.integer("general", "threads");
    const auto times = time_grid(10.0, 0.25);
    const std::vector<double> probe_times{1.0, 2.0, M_PI, 5.0};

    for (int l : cfg.integers("validate", "star_L")) {
        const Graph g = make_star(l);
        Rng rng = realization_stream(seed, static_cast<std::uint64_t>(l));
        const auto j = sample_couplings(g, rng, 0.5);
        for (int s : {1, l / 2, l - 1}) {
            const auto ld = lanczos(j, basis_vector(l, MajoranaString::prefix(s)));
            const auto amps = evolve_amplitudes(ld, times);
            const auto leaves = leaf_couplings(j);
            double err = 0.0;
            for (std::size_t i = 0; i < times.size(); ++i) {
                const auto w = star::lanczos_wavefunctions(leaves, s, times[i]);
                const double phi2 = amps.phi.cols() > 2 ? amps.phi(i, 2) : 0.0;
                err = std::max({err, std::abs(amps.phi(i, 0) - w.phi0), std::abs(amps.phi(i, 1) - w.phi1),
                                std::abs(phi2 - w.phi2)});
            }
            const auto w = star::lanczos_wavefunctions(leaves, s, 0.0);
            // The chain closes at K = 2 when no leaf lies outside the string.
            const int expected_k = s < l - 1 ? 3 : 2;
            report.check(ld.krylov_dim == expected_k, tag("star K", l, s),
                         "K=" + std::to_string(ld.krylov_dim) + " expected " + std::to_string(expected_k));
            if (ld.krylov_dim != expected_k) continue;
            const double b2 = expected_k == 3 ? ld.b[1] : 0.0;
            report.within(std::max(std::abs(ld.b[0] - w.b1), std::abs(b2 - w.b2)), 0.0, 1e-10,
                          tag("star b1,b2", l, s));
            report.within(err, 0.0, 1e-8, tag("star phi_n(t)", l, s));
        }

        // Ensemble of the full pipeline at variance 1/2, rescaled.
        for (int s : {1, l / 2}) {
            const auto stats = run_realizations(
                realizations, seed + 1,
                [&](int, Rng& r) {
                    const auto jr = rescale_to_unit_bandwidth(sample_couplings(g, r, 0.5));
                    const auto ld = lanczos(jr, basis_vector(l, MajoranaString::prefix(s)));
                    const auto ck = k_complexity(evolve_amplitudes(ld, probe_times));
                    const auto amps = evolve_amplitudes(ld, probe_times);
                    std::vector<double> row{ld.b[0] * ld.b[0], std::pow(ld.b[0], 4)};
                    for (std::size_t i = 0; i < probe_times.size(); ++i) row.push_back(amps.phi(i, 0));
                    for (std::size_t i = 0; i < probe_times.size(); ++i) row.push_back(ck.ck[i]);
                    return row;
                },
                threads);
            report.sigma(stats.mean[0], stats.stderr_[0], star::moment(1, s, l), tag("star b^2 mean", l, s));
            report.sigma(stats.mean[1], stats.stderr_[1], star::moment(2, s, l), tag("star b^4 mean", l, s));
            for (std::size_t i = 0; i < probe_times.size(); ++i) {
                const auto c = star::string_curves(s, l, probe_times[i]);
                const std::size_t k = probe_times.size();
                report.sigma(stats.mean[2 + i], stats.stderr_[2 + i], c.phi0_bar,
                             tag("star phi0 mean t=" + format_double(probe_times[i]), l, s));
                report.sigma(stats.mean[2 + k + i], stats.stderr_[2 + k + i], c.ck_bar,
                             tag("star C_K mean t=" + format_double(probe_times[i]), l, s));
            }
        }

        // Batteries through the ensemble driver.
        EnsembleSpec spec;
        spec.realizations = realizations;
        spec.master_seed = seed + 2;
        spec.family.kind = GraphFamily::Kind::star;
        spec.num_modes = l;
        spec.task = TaskKind::battery;
        spec.variance = 0.5;
        spec.times = time_grid(6.0, 0.05);
        spec.threads = threads;
        for (Axis axis : {Axis::x, Axis::z}) {
            spec.axis = axis;
            const auto b = run_battery(spec);
            const auto w = star::battery_weights(axis, l);
            double sum = 0.0;
            for (double x : w) sum += x;
            const double b2 = sum / (l - 1.0);
            const std::string name = axis == Axis::x ? "x-battery" : "z-battery";
            for (double t : {1.0, 2.0, 3.0}) {
                const auto i = static_cast<std::size_t>(std::lround(t / 0.05));
                const auto exact = star::chain_curves(l, b2, star::weighted_b4_dirichlet(w), t);
                report.sigma(b.power.mean[i], b.power.stderr_[i], exact.p_av,
                             tag("star " + name + " P_av t=" + format_double(t), l));
            }
            report.sigma(b.p_max, b.p_max_stderr, star::chain_curves(l, b2, 0.0, 1.0).p_max,
                         tag("star " + name + " P_max", l));
            if (axis == Axis::x)
                report.within(b2, star::battery_curves(Axis::x, l, 1.0).b2_bar, 1e-12, tag("star x-battery b^2 weights", l));
            else
                ctx.log << "INFO z-battery leading-order closed form: P_max=" << star::battery_curves(Axis::z, l, 1.0).p_max
                        << " vs exact " << star::chain_curves(l, b2, 0.0, 1.0).p_max << '\n';
        }

        const auto b4_qmc = star::b4_quasi_monte_carlo(Axis::x, l, cfg.integer("validate", "qmc_points"));
        const auto b4_exact = star::weighted_b4_dirichlet(star::battery_weights(Axis::x, l));
        report.within(b4_qmc, b4_exact, 1e-3 * b4_exact, tag("star x-battery b^4 QMC", l));
    }
    report.within(star::power_profile_peak().value, 0.724611, 5e-7, "profile peak (1-cos t)/t");
    return report.exit_code();
}

int cmd_validate_oracle(const RunContext& ctx) {
    const auto& cfg = ctx.config;
    Report report(ctx.log);
    const auto seed = std::stoull(cfg.text("general", "seed"));
    const int threads = cfg.integer("general", "threads");

    for (int l : cfg.integers("validate", "oracle_L")) {
        if (l > kDenseSuperoperatorCap) continue;
        Rng rng = realization_stream(seed, static_cast<std::uint64_t>(100 + l));
        const auto j = sample_couplings(make_complete(l), rng);
        double sign = 0.0, imag = 0.0;
        for (int s = 1; s <= l; ++s) {
            sign = std::max(sign, (sector_matrix(j, s) - dense_superoperator_sector(j, s)).cwiseAbs().maxCoeff());
            imag = std::max(imag, dense_superoperator_max_imag(j, s));
        }
        report.within(sign, 0.0, 1e-10, tag("sign rule vs dense commutator", l));
        report.within(imag, 0.0, 1e-12, tag("dense superoperator imaginary part", l));
        report.within(bandwidth(j), dense_bandwidth(j), 1e-10, tag("bandwidth sum eps_k vs dense", l));

        const auto ju = rescale_to_unit_bandwidth(j);
        const auto times = time_grid(10.0, 0.1);
        double auto_err = 0.0;
        const Propagator prop(ju);
        for (int s = 1; s < l; ++s) {
            const auto v = basis_vector(l, MajoranaString::prefix(s));
            const auto amps = evolve_amplitudes(lanczos(ju, v), times);
            for (std::size_t i = 0; i < times.size(); ++i)
                auto_err = std::max(auto_err, std::abs(amps.phi(i, 0) -
                                                       free_autocorrelation(prop, MajoranaString::prefix(s), times[i])));
        }
        for (Axis axis : {Axis::x, Axis::z}) {
            const auto d = battery_return_amplitude(ju, axis, times, AutocorrelationPath::free_determinant);
            const auto k = battery_return_amplitude(ju, axis, times, AutocorrelationPath::sector_krylov);
            for (std::size_t i = 0; i < times.size(); ++i) auto_err = std::max(auto_err, std::abs(d[i] - k[i]));
        }
        report.within(auto_err, 0.0, 1e-8, tag("determinant vs sector autocorrelation", l));
    }

    // Bridge identity on the complete graph: paired per-realization difference.
    const int realizations = cfg.integer("validate", "bridge_realizations");
    const std::vector<double> times{0.0, 1.0, 2.0, 3.0, 4.0};
    for (int l : {6, 8}) {
        const Graph g = make_complete(l);
        for (Axis axis : {Axis::x, Axis::z}) {
            const auto stats = run_realizations(
                realizations, seed + 7,
                [&](int, Rng& r) {
                    const auto jr = rescale_to_unit_bandwidth(sample_couplings(g, r));
                    const auto direct = dense_evolution_power(jr, axis, times);
                    const auto bridge = charging_power(jr, axis, times);
                    std::vector<double> row;
                    for (std::size_t i = 1; i < times.size(); ++i) row.push_back(direct.power[i] - bridge.power[i]);
                    return row;
                },
                threads);
            for (std::size_t i = 0; i + 1 < times.size(); ++i)
                report.sigma(stats.mean[i], stats.stderr_[i], 0.0,
                             tag(std::string("bridge identity ") + (axis == Axis::x ? "x" : "z") +
                                     " t=" + format_double(times[i + 1]),
                                 l));
        }
    }
    return report.exit_code();
}

}  // namespace opdeloc::cli
