#include "opdeloc/star_exact.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/random/sobol.hpp>

namespace opdeloc::star {

namespace {

void check_modes(int num_modes) {
    if (num_modes < 2 || num_modes % 2 != 0) throw std::invalid_argument("star: L must be even and >= 2");
}

}  // namespace

Wavefunctions three_level_wavefunctions(double b1, double b2, double t) {
    Wavefunctions w;
    w.b1 = b1;
    w.b2 = b2;
    const double mu2 = b1 * b1 + b2 * b2;
    if (!(mu2 > 0.0)) return w;
    const double mu = std::sqrt(mu2);
    const double c = std::cos(mu * t);
    w.phi0 = (b2 * b2 + b1 * b1 * c) / mu2;
    w.phi1 = b1 * std::sin(mu * t) / mu;
    w.phi2 = b1 * b2 * (1.0 - c) / mu2;
    return w;
}

Wavefunctions lanczos_wavefunctions(const std::vector<double>& leaf_couplings, int s, double t) {
    const int num_modes = static_cast<int>(leaf_couplings.size()) + 1;
    if (s < 1 || s >= num_modes) throw std::invalid_argument("star: operator size must satisfy 1 <= s < L");
    double inner = 0.0, outer = 0.0;
    for (int i = 0; i < num_modes - 1; ++i) (i < s ? inner : outer) += leaf_couplings[i] * leaf_couplings[i];
    return three_level_wavefunctions(std::sqrt(inner), std::sqrt(outer), t);
}

double moment(int n, int s, int num_modes) {
    if (n < 1) throw std::invalid_argument("star::moment: n must be >= 1");
    double value = 1.0;
    for (int j = 0; j < n; ++j) value *= (s + 2.0 * j) / (num_modes - 1.0 + 2.0 * j);
    return value;
}

ProfilePeak power_profile_peak() {
    const auto [t, neg] = boost::math::tools::brent_find_minima(
        [](double x) { return -(1.0 - std::cos(x)) / x; }, 1.0, 4.0, 60);
    return {-neg, t};
}

StringCurves string_curves(int s, int num_modes, double t) {
    if (s < 1 || s >= num_modes) throw std::invalid_argument("star: operator size must satisfy 1 <= s < L");
    const double b2 = moment(1, s, num_modes);
    const double b4 = moment(2, s, num_modes);
    const double oc = 1.0 - std::cos(t);
    const double sn = std::sin(t);
    return {1.0 - b2 * oc, b2 * sn * sn + 2.0 * (b2 - b4) * oc * oc};
}

BatteryCurves chain_curves(int num_modes, double b2_bar, double b4_bar, double t) {
    BatteryCurves c;
    c.b2_bar = b2_bar;
    c.b4_bar = b4_bar;
    const double oc = 1.0 - std::cos(t);
    const double sn = std::sin(t);
    c.phi0_bar = 1.0 - b2_bar * oc;
    c.ck_bar = b2_bar * sn * sn + 2.0 * (b2_bar - b4_bar) * oc * oc;
    c.ck_bar_approx = b2_bar * sn * sn + 2.0 * (b2_bar - b2_bar * b2_bar) * oc * oc;
    const double scale = 0.5 * num_modes * b2_bar;
    c.p_av = t > 0.0 ? scale * oc / t : 0.0;
    c.p_max = scale * power_profile_peak().value;
    return c;
}

BatteryCurves battery_curves(Axis axis, int num_modes, double t, double b4_x) {
    check_modes(num_modes);
    const double l = num_modes;
    if (axis == Axis::x) return chain_curves(num_modes, 1.0 - 0.5 * (l - 2.0) / (l - 1.0), b4_x, t);

    BatteryCurves c;
    const double f = (l - 2.0) / (l - 1.0);
    const double oc = 1.0 - std::cos(t);
    const double sn = std::sin(t);
    c.b2_bar = 2.0 / l * f;
    c.b4_bar = c.b2_bar * c.b2_bar;
    c.phi0_bar = 1.0 - c.b2_bar * oc;
    c.ck_bar = 2.0 / l * (f * sn * sn + 2.0 * f * oc * oc);
    c.ck_bar_approx = c.ck_bar;
    c.p_av = t > 0.0 ? f * oc / t : 0.0;
    c.p_max = 0.724611 * f;
    return c;
}

std::vector<double> battery_weights(Axis axis, int num_modes) {
    check_modes(num_modes);
    const auto op = battery_operator(axis, num_modes);
    const int hub = num_modes - 1;
    std::vector<double> w(num_modes - 1, 0.0);
    for (int i = 0; i < hub; ++i) {
        const Mask pair = (Mask{1} << i) | (Mask{1} << hub);
        for (const auto& term : op.terms)
            if (std::popcount(term.string.mask & pair) == 1) w[i] += std::norm(term.phase);
        w[i] *= op.normalization * op.normalization;
    }
    return w;
}

double weighted_b4_dirichlet(const std::vector<double>& weights) {
    const double n = static_cast<double>(weights.size());
    double sum = 0.0, sum2 = 0.0;
    for (double w : weights) {
        sum += w;
        sum2 += w * w;
    }
    return (sum * sum + 2.0 * sum2) / (n * (n + 2.0));
}

double b4_quasi_monte_carlo(Axis axis, int num_modes, std::size_t points) {
    if (points == 0) throw std::invalid_argument("b4_quasi_monte_carlo: need at least one point");
    const auto w = battery_weights(axis, num_modes);
    const auto dim = static_cast<unsigned>(w.size());
    boost::random::sobol qrng(dim);
    const double scale = std::ldexp(1.0, -static_cast<int>(std::numeric_limits<boost::random::sobol::result_type>::digits));
    std::vector<double> g(dim);
    double acc = 0.0;
    qrng.discard(dim);  // drop the origin
    for (std::size_t k = 0; k < points; ++k) {
        double num = 0.0, den = 0.0;
        for (unsigned d = 0; d < dim; ++d) {
            const double u = (static_cast<double>(qrng()) + 0.5) * scale;
            const double z = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
            num += w[d] * z * z;
            den += z * z;
        }
        const double b2 = num / den;
        acc += b2 * b2;
    }
    return acc / static_cast<double>(points);
}

}  // namespace opdeloc::star
