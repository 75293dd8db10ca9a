#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "opdeloc/opspace.hpp"

namespace opdeloc {

struct LanczosOptions {
    int max_dim = 200;         // Krylov dimension cap (n_max)
    double rel_tol = 1e-10;    // stop when b_n < rel_tol * ||T||_bound
    bool keep_basis = false;
};

struct LanczosData {
    std::vector<double> b;  // b_1 .. b_{K-1}; b_0 = 0 is implicit
    int krylov_dim = 0;     // K
    bool truncated = false; // stopped at max_dim with the space not exhausted
    std::vector<Eigen::VectorXd> basis;  // O_0 .. O_{K-1} (real parts) if kept
};

// Lanczos on the antisymmetric sector generator T with full
// reorthogonalization: b_{n+1} O_{n+1} = T O_n + b_n O_{n-1}. The operator
// Krylov vectors are i^n O_n.
LanczosData lanczos(const SectorLiouvillian& op, const Eigen::VectorXd& v0,
                    const LanczosOptions& options = {});
LanczosData lanczos(const CouplingMatrix& j, const SectorVector& v0,
                    const LanczosOptions& options = {});

struct KrylovAmplitudes {
    std::vector<double> times;
    Eigen::MatrixXd phi;  // phi(i, n) = phi_n(times[i])
};

// phi_n' = b_n phi_{n-1} - b_{n+1} phi_{n+1}, phi_n(0) = delta_{n0}, solved
// exactly through the eigendecomposition of the symmetric tridiagonal matrix
// with off-diagonals b_n.
KrylovAmplitudes evolve_amplitudes(const LanczosData& ld, const std::vector<double>& times);

struct SeriesMetadata {
    std::string model;
    int num_modes = 0;
    int half_degree = 0;
    double rewire_prob = 0.0;
    int size = 0;
    std::uint64_t seed = 0;
};

struct ComplexitySeries {
    std::vector<double> times;
    std::vector<double> ck;
    SeriesMetadata meta;
};

ComplexitySeries k_complexity(const KrylovAmplitudes& amps);

struct RatioResult {
    double ratio = 0.0;     // mean over the window of ck_large / ck_small
    double flatness = 0.0;  // std / mean of the pointwise ratio
    int points = 0;
};

RatioResult delocalization_ratio(const ComplexitySeries& large, const ComplexitySeries& small,
                                 double t_lo, double t_hi);

// Uniform grid 0, dt, ..., t_max (inclusive up to rounding).
std::vector<double> time_grid(double t_max, double dt);

// Smallest Krylov dimension whose tail bound (||T|| t)^n / n! falls below eps
// on [0, t_max]; amplitudes beyond it are negligible at that horizon.
int krylov_dim_for_horizon(double t_max, double norm_bound, double eps = 1e-14);

}  // namespace opdeloc
