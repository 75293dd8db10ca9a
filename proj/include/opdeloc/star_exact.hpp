#pragma once

// Closed forms for SYK2 on the star graph (hub = last vertex), used as the
// analytic test surface for the numerical pipeline. Ensemble formulas assume
// the quench is rescaled to unit bandwidth, so b_1^2 + b_2^2 = 1.

#include <cstddef>
#include <vector>

#include "opdeloc/opspace.hpp"

namespace opdeloc::star {

struct Wavefunctions {
    double b1 = 0.0;
    double b2 = 0.0;
    double phi0 = 1.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
};

// `leaf_couplings` holds J_1..J_{L-1}; the initial operator is the string on
// the first s leaves, 1 <= s < L.
Wavefunctions lanczos_wavefunctions(const std::vector<double>& leaf_couplings, int s, double t);

// Krylov wavefunctions of a K = 3 chain with coefficients (b1, b2).
Wavefunctions three_level_wavefunctions(double b1, double b2, double t);

// E[b^{2n}] for the size-s string: prod_{j<n} (s+2j) / prod_{j<n} (L-1+2j).
double moment(int n, int s, int num_modes);

// max_t (1 - cos t)/t and its argmax.
struct ProfilePeak {
    double value;
    double time;
};
ProfilePeak power_profile_peak();

struct StringCurves {
    double phi0_bar;
    double ck_bar;
};
StringCurves string_curves(int s, int num_modes, double t);

struct BatteryCurves {
    double b2_bar = 0.0;     // E[b_1^2]
    double b4_bar = 0.0;     // E[b_1^4] used for the exact complexity
    double phi0_bar = 0.0;
    double ck_bar = 0.0;         // with b4_bar
    double ck_bar_approx = 0.0;  // with E[b^4] ~ E[b^2]^2 (x only)
    double p_av = 0.0;
    double p_max = 0.0;
};

// x-battery: E[b^2] = 1 - (L-2)/(2(L-1)); the exact b^4 statistic must be
// supplied (see b4_quasi_monte_carlo).
// z-battery: the closed forms P_av = (L-2)/(L-1) (1-cos t)/t,
// P_max = 0.724611 (L-2)/(L-1) and C_K = (2/L)(L-2)/(L-1)[sin^2 + 2(1-cos)^2].
BatteryCurves battery_curves(Axis axis, int num_modes, double t, double b4_x = 0.0);

// Ensemble curves of any K <= 3 chain on the rescaled star from the first two
// moments of b_1^2: phi0 = 1 - E[b^2](1-cos t),
// C_K = E[b^2] sin^2 t + 2(E[b^2] - E[b^4])(1-cos t)^2, P = (L/2)(1-phi0)/t.
BatteryCurves chain_curves(int num_modes, double b2_bar, double b4_bar, double t);

// b_1^2 = sum_i w_i J_i^2 / mu^2 for the normalized battery operator on the
// star; w_i (leaf i = 1..L-1) is 2/L times the number of terms whose string
// contains exactly one of {i, hub}.
std::vector<double> battery_weights(Axis axis, int num_modes);

// E[(sum w_i x_i)^2] for x ~ Dirichlet(1/2, ..., 1/2): exact E[b_1^4] under
// Gaussian couplings on the unit-bandwidth sphere.
double weighted_b4_dirichlet(const std::vector<double>& weights);

// E[b_1^4] by Sobol quasi-Monte Carlo over Gaussian couplings mapped onto the
// unit-bandwidth sphere.
double b4_quasi_monte_carlo(Axis axis, int num_modes, std::size_t points = 1'000'000);

}  // namespace opdeloc::star
