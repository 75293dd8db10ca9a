#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "opdeloc/couplings.hpp"
#include "opdeloc/krylov.hpp"
#include "opdeloc/opspace.hpp"

namespace opdeloc {

// E(t) = <psi(t)|H0|psi(t)> - E0 and P_av(t) = E(t)/t (P_av(0) = 0).
struct PowerSeries {
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> power;
    double p_max = 0.0;
    double t_star = 0.0;
};

struct PowerPeak {
    double p_max = 0.0;
    double t_star = 0.0;
};

enum class AutocorrelationPath {
    free_determinant,  // det U(t)[S_j, S_k] minors
    sector_krylov,     // Lanczos + amplitude evolution per size sector
};

// <0|H0|0> for H0 = sum_j sigma^a_j on L/2 sites with h = 1.
inline double battery_ground_energy(int num_modes) { return -0.5 * num_modes; }

// phi_0(t) = (H0 | H0(t)) / (H0 | H0) under the quench J (single realization).
std::vector<double> battery_return_amplitude(const CouplingMatrix& j, Axis axis,
                                             const std::vector<double>& times,
                                             AutocorrelationPath path = AutocorrelationPath::free_determinant,
                                             const LanczosOptions& lanczos_options = {});

// Power through the Krylov bridge P_av = (phi_0 - 1)/t * <0|H0|0> for one
// coupling realization. J must already have unit bandwidth.
PowerSeries charging_power(const CouplingMatrix& j, Axis axis, const std::vector<double>& times,
                           AutocorrelationPath path = AutocorrelationPath::free_determinant);

PowerSeries power_from_return_amplitude(int num_modes, const std::vector<double>& times,
                                        const std::vector<double>& phi0);

// Fills energy/power bookkeeping from E(t) and locates the peak.
PowerSeries power_from_energy(const std::vector<double>& times, const std::vector<double>& energy);

// Grid argmax over t > 0, refined by golden-section search on a local cubic
// interpolant within one grid step either side.
PowerPeak max_power(const PowerSeries& ps);
PowerPeak max_power(const std::vector<double>& times, const std::vector<double>& power);
// Same refinement against an exactly evaluable profile.
PowerPeak max_power(const std::function<double(double)>& power, const std::vector<double>& grid);

// Coefficients of t, t^3, t^5, t^7 of the ensemble-averaged x-battery power
// for SYK2 on the complete graph, for bandwidth `mu` of the unrescaled quench.
std::vector<double> perturbative_coefficients(int num_modes, double mu);
PowerSeries perturbative_power(int num_modes, double mu, const std::vector<double>& times);

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double intercept_stderr = 0.0;
    double slope_stderr = 0.0;
    std::vector<double> residuals;

    double operator()(double x) const { return intercept + slope * x; }
};

// Ordinary least squares; optional per-point standard errors turn it into a
// weighted fit whose parameter errors come from those weights.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>& y_stderr = {});

// mu(L) from (L, measured bandwidth) samples.
LinearFit bandwidth_fit(const std::vector<std::pair<double, double>>& samples);

}  // namespace opdeloc
