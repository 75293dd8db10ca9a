#include "opdeloc/battery.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

namespace opdeloc {

namespace {

void check_unit_bandwidth(const CouplingMatrix& j) {
    const double mu = bandwidth(j);
    if (std::abs(mu - 1.0) > 1e-9)
        throw std::invalid_argument("charging_power: quench must have unit bandwidth (got " +
                                    std::to_string(mu) + ")");
}

std::map<int, std::vector<BatteryTerm>> terms_by_size(const BatteryOperator& op) {
    std::map<int, std::vector<BatteryTerm>> groups;
    for (const auto& t : op.terms) groups[t.string.size()].push_back(t);
    return groups;
}

std::vector<double> return_amplitude_determinant(const CouplingMatrix& j, const BatteryOperator& op,
                                                 const std::vector<double>& times) {
    const Propagator prop(j);
    const auto groups = terms_by_size(op);
    const double norm2 = op.normalization * op.normalization;
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const Eigen::MatrixXd u = prop(times[i]);
        std::complex<double> acc = 0.0;
        for (const auto& [size, terms] : groups)
            for (const auto& bra : terms)
                for (const auto& ket : terms)
                    acc += std::conj(bra.phase) * ket.phase * string_overlap(u, ket.string.mask, bra.string.mask);
        out[i] = norm2 * acc.real();
    }
    return out;
}

std::vector<double> return_amplitude_krylov(const CouplingMatrix& j, const BatteryOperator& op,
                                            const std::vector<double>& times, const LanczosOptions& options) {
    const double norm2 = op.normalization * op.normalization;
    std::vector<double> out(times.size(), 0.0);
    for (const auto& [size, terms] : terms_by_size(op)) {
        const auto reference = terms.front().phase;
        SectorVector v = zero_vector(op.num_modes, size);
        double weight = 0.0;
        for (const auto& t : terms) {
            const auto rel = t.phase / reference;
            if (std::abs(rel.imag()) > 1e-14)
                throw std::invalid_argument("sector terms must share a common phase");
            v.amp(static_cast<Eigen::Index>(colex_rank(t.string.mask))) += rel.real();
            weight += std::norm(t.phase);
        }
        v.amp /= v.amp.norm();
        const auto amps = evolve_amplitudes(lanczos(j, v, options), times);
        for (std::size_t i = 0; i < times.size(); ++i)
            out[i] += norm2 * weight * amps.phi(static_cast<Eigen::Index>(i), 0);
    }
    return out;
}

// Cubic through four samples, evaluated at t.
double lagrange4(const double* x, const double* y, double t) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        double w = 1.0;
        for (int k = 0; k < 4; ++k)
            if (k != i) w *= (t - x[k]) / (x[i] - x[k]);
        sum += w * y[i];
    }
    return sum;
}

std::size_t grid_argmax(const std::vector<double>& times, const std::vector<double>& power) {
    std::size_t best = times.size();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) continue;
        if (best == times.size() || power[i] > power[best]) best = i;
    }
    if (best == times.size()) throw std::invalid_argument("max_power: no positive times in series");
    return best;
}

PowerPeak refine(const std::function<double(double)>& f, double lo, double hi, PowerPeak grid_peak) {
    const auto [t, neg] = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, lo, hi, 50);
    if (-neg > grid_peak.p_max) return {-neg, t};
    return grid_peak;
}

}  // namespace

std::vector<double> battery_return_amplitude(const CouplingMatrix& j, Axis axis, const std::vector<double>& times,
                                             AutocorrelationPath path, const LanczosOptions& lanczos_options) {
    const auto op = battery_operator(axis, j.num_modes());
    auto phi = path == AutocorrelationPath::free_determinant ? return_amplitude_determinant(j, op, times)
                                                             : return_amplitude_krylov(j, op, times, lanczos_options);
    for (std::size_t i = 0; i < times.size(); ++i)
        if (times[i] == 0.0) phi[i] = 1.0;
    return phi;
}

PowerSeries power_from_energy(const std::vector<double>& times, const std::vector<double>& energy) {
    if (times.size() != energy.size()) throw std::invalid_argument("power_from_energy: length mismatch");
    PowerSeries ps;
    ps.times = times;
    ps.energy = energy;
    ps.power.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) ps.power[i] = times[i] > 0.0 ? energy[i] / times[i] : 0.0;
    if (!times.empty() && times.back() > 0.0) {
        const auto peak = max_power(ps);
        ps.p_max = peak.p_max;
        ps.t_star = peak.t_star;
    }
    return ps;
}

PowerSeries power_from_return_amplitude(int num_modes, const std::vector<double>& times,
                                        const std::vector<double>& phi0) {
    const double e0 = battery_ground_energy(num_modes);
    std::vector<double> energy(phi0.size());
    for (std::size_t i = 0; i < phi0.size(); ++i) energy[i] = (phi0[i] - 1.0) * e0;
    return power_from_energy(times, energy);
}

PowerSeries charging_power(const CouplingMatrix& j, Axis axis, const std::vector<double>& times,
                           AutocorrelationPath path) {
    check_unit_bandwidth(j);
    return power_from_return_amplitude(j.num_modes(), times, battery_return_amplitude(j, axis, times, path));
}

PowerPeak max_power(const PowerSeries& ps) { return max_power(ps.times, ps.power); }

PowerPeak max_power(const std::vector<double>& times, const std::vector<double>& power) {
    if (times.empty() || times.size() != power.size()) throw std::invalid_argument("max_power: bad series");
    const std::size_t i = grid_argmax(times, power);
    PowerPeak peak{power[i], times[i]};
    if (i == 0 || i + 1 >= times.size() || !(times[i - 1] > 0.0) || times.size() < 4) return peak;
    // Four-point stencil covering [t_{i-1}, t_{i+1}], leaning towards the larger neighbour.
    std::size_t first = (power[i + 1] >= power[i - 1] || i < 2) ? i - 1 : i - 2;
    if (first + 3 >= times.size()) first = i - 2;
    const double* x = times.data() + first;
    const double* y = power.data() + first;
    return refine([&](double t) { return lagrange4(x, y, t); }, times[i - 1], times[i + 1], peak);
}

PowerPeak max_power(const std::function<double(double)>& power, const std::vector<double>& grid) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = grid[i] > 0.0 ? power(grid[i]) : 0.0;
    const std::size_t i = grid_argmax(grid, values);
    PowerPeak peak{values[i], grid[i]};
    if (i == 0 || i + 1 >= grid.size() || !(grid[i - 1] > 0.0)) return peak;
    return refine(power, grid[i - 1], grid[i + 1], peak);
}

std::vector<double> perturbative_coefficients(int num_modes, double mu) {
    if (num_modes < 4 || num_modes % 2 != 0) throw std::invalid_argument("perturbative_power: L must be even and >= 4");
    if (!(mu > 0.0)) throw std::invalid_argument("perturbative_power: bandwidth must be positive");
    const double l = num_modes;
    const double h = l / 2.0 - 1.0;  // L/2 - 1
    double a1 = 0.0, a3 = 0.0, a5 = 0.0, a7 = 0.0;
    for (int k = 1; k <= num_modes / 2; ++k) {
        const double s = 2.0 * k - 1.0;  // operator size 2k-1
        const double r = l + 1.0 - 2.0 * k;  // L - s
        a1 += s * r;
        a3 += s * r * ((6.0 * k - 4.0) * l - 3.0 * s * s + 2.0);
        a5 += 5.0 * s * r * (-6.0 * s * h * r + 3.0 * s * s * r * r + 4.0 * h * h);
        a7 += 7.0 * s * r *
              (-4.0 * s * (25.0 / 4.0 * l * l - 51.0 / 2.0 * l + 32.0) * (2.0 * k - l - 1.0) -
               15.0 * s * s * s * r * r * r - 60.0 * s * s * h * r * r - 8.0 * l * l * l + 49.0 * l * l -
               118.0 * l + 80.0);
    }
    const double mu2 = mu * mu;
    return {a1 / (2.0 * l * mu2), -a3 / (24.0 * l * l * mu2 * mu2), a5 / (720.0 * l * l * l * mu2 * mu2 * mu2),
            -a7 / (40320.0 * l * l * l * l * mu2 * mu2 * mu2 * mu2)};
}

PowerSeries perturbative_power(int num_modes, double mu, const std::vector<double>& times) {
    const auto c = perturbative_coefficients(num_modes, mu);
    std::vector<double> energy(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        const double t2 = t * t;
        energy[i] = t * t * (c[0] + t2 * (c[1] + t2 * (c[2] + t2 * c[3])));
    }
    return power_from_energy(times, energy);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& y_stderr) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n || (!y_stderr.empty() && y_stderr.size() != n))
        throw std::invalid_argument("linear_fit: need at least two matching points");
    const bool weighted = !y_stderr.empty();
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0;
        if (weighted) {
            if (!(y_stderr[i] > 0.0)) throw std::invalid_argument("linear_fit: standard errors must be positive");
            w = 1.0 / (y_stderr[i] * y_stderr[i]);
        }
        sw += w;
        sx += w * x[i];
        sy += w * y[i];
        sxx += w * x[i] * x[i];
        sxy += w * x[i] * y[i];
    }
    const double det = sw * sxx - sx * sx;
    if (!(std::abs(det) > 1e-12 * sw * sxx)) throw std::invalid_argument("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.slope = (sw * sxy - sx * sy) / det;
    fit.intercept = (sxx * sy - sx * sxy) / det;
    double chi2 = 0.0;
    fit.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        fit.residuals[i] = y[i] - fit(x[i]);
        const double w = weighted ? 1.0 / (y_stderr[i] * y_stderr[i]) : 1.0;
        chi2 += w * fit.residuals[i] * fit.residuals[i];
    }
    // Unweighted: scale by the residual variance. Weighted: inflate by the
    // reduced chi-square when the line does not describe the points.
    double scale = 0.0;
    if (n > 2) scale = chi2 / static_cast<double>(n - 2);
    if (weighted) scale = std::max(1.0, scale);
    fit.slope_stderr = std::sqrt(scale * sw / det);
    fit.intercept_stderr = std::sqrt(scale * sxx / det);
    return fit;
}

LinearFit bandwidth_fit(const std::vector<std::pair<double, double>>& samples) {
    std::vector<double> x, y;
    for (const auto& [l, mu] : samples) {
        x.push_back(l);
        y.push_back(mu);
    }
    return linear_fit(x, y);
}

}  // namespace opdeloc
