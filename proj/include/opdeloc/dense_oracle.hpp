#pragma once

// Brute-force Hilbert-space implementation used to gate the fast paths.
// Everything here builds explicit 2^{L/2}-dimensional matrices from the
// Jordan-Wigner representation, so sizes are hard-capped.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "opdeloc/battery.hpp"
#include "opdeloc/couplings.hpp"
#include "opdeloc/opspace.hpp"

namespace opdeloc {

inline constexpr int kDenseGammaCap = 12;
inline constexpr int kDenseEvolutionCap = 10;
inline constexpr int kDenseSuperoperatorCap = 8;

using DenseOperator = Eigen::MatrixXcd;

// g^{2j-1} = Z_1..Z_{j-1} X_j / sqrt2,  g^{2j} = Z_1..Z_{j-1} Y_j / sqrt2.
std::vector<DenseOperator> dense_gammas(int num_modes);

// Pauli operator on `site` (0-based) of a chain with `sites` qubits.
DenseOperator dense_pauli(int sites, int site, char axis);

// 2^{s/2} times the ascending product of gammas in `mask`.
DenseOperator dense_string(const std::vector<DenseOperator>& gammas, Mask mask);

DenseOperator dense_hamiltonian(const std::vector<DenseOperator>& gammas, const CouplingMatrix& j);

// Static battery Hamiltonian sum_j sigma^a_j on L/2 sites (h = 1).
DenseOperator dense_battery_hamiltonian(Axis axis, int num_modes);

// (A|B) = Tr[A^dagger B] / D.
std::complex<double> frobenius(const DenseOperator& a, const DenseOperator& b);

// max(E) - min(E) of the many-body Hamiltonian.
double dense_bandwidth(const CouplingMatrix& j);

// Matrix elements (O_{S'} | [H, O_S]) / i over the size-s string basis, in
// colex order. Real parts; see dense_superoperator_max_imag for the check.
Eigen::MatrixXd dense_superoperator_sector(const CouplingMatrix& j, int size);
double dense_superoperator_max_imag(const CouplingMatrix& j, int size);

// Ground state of the static battery, quench with H(J) rescaled to unit
// many-body bandwidth, exact E(t) and P_av(t) = E(t)/t.
PowerSeries dense_evolution_power(const CouplingMatrix& j, Axis axis, const std::vector<double>& times);

// (H0 | H0(t)) / (H0 | H0) for the same rescaled quench: the Krylov return
// amplitude computed from explicit matrices.
std::vector<double> dense_return_amplitude(const CouplingMatrix& j, Axis axis,
                                           const std::vector<double>& times);

}  // namespace opdeloc
