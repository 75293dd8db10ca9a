#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "opdeloc/combinatorics.hpp"
#include "opdeloc/couplings.hpp"

namespace opdeloc {

// Normalized string 2^{s/2} g^{i_1} ... g^{i_s} with ascending indices.
// Strings are orthonormal under (A|B) = Tr[A^dagger B] / D.
struct MajoranaString {
    Mask mask = 0;

    int size() const { return std::popcount(mask); }
    static MajoranaString from_modes(const std::vector<int>& modes);  // 0-based
    static MajoranaString prefix(int length) { return {low_bits(length)}; }
};

// Colex-ordered basis of all strings of fixed size on L modes.
class SectorBasis {
public:
    SectorBasis(int num_modes, int size);

    int num_modes() const { return num_modes_; }
    int size() const { return size_; }
    std::size_t dimension() const { return masks_.size(); }
    Mask mask(std::size_t index) const { return masks_[index]; }
    std::size_t index(Mask m) const { return static_cast<std::size_t>(ranks_.rank(m)); }
    const RankTable& ranks() const { return ranks_; }

private:
    int num_modes_;
    int size_;
    RankTable ranks_;
    std::vector<Mask> masks_;
};

// Shared, cached basis per (L, s); safe to call from several threads.
std::shared_ptr<const SectorBasis> sector_basis(int num_modes, int size);

// Operator expansion coefficients within one size sector.
struct SectorVector {
    int num_modes = 0;
    int size = 0;
    Eigen::VectorXd amp;

    double norm() const { return amp.norm(); }
};

SectorVector zero_vector(int num_modes, int size);
SectorVector basis_vector(int num_modes, MajoranaString s);

// [H, O_S] = i sum_{S'} T_{S'S} O_{S'} with T real antisymmetric. For an edge
// (a,b), a<b, with exactly one endpoint in S:
//   T_{S^{ab}, S} = J_ab * sigma,  sigma = -(-1)^m if a in S, +(-1)^m if b in S,
// where m counts members of S strictly between a and b.
SectorVector apply_liouvillian(const CouplingMatrix& j, const SectorVector& v);

// Serial scatter over (string, edge) pairs straight from the rule above. Kept
// as the reference for the parallel kernels.
SectorVector apply_liouvillian_reference(const CouplingMatrix& j, const SectorVector& v);

// T restricted to one sector, reusable across many products. Either a
// precomputed row stencil (CSR) or an on-the-fly gather; both are OpenMP
// parallel over output rows and produce identical results.
class SectorLiouvillian {
public:
    enum class Storage { automatic, stencil, matrix_free };

    SectorLiouvillian(const CouplingMatrix& j, int size, Storage storage = Storage::automatic,
                      std::size_t stencil_budget_bytes = std::size_t{1} << 30);

    int num_modes() const { return basis_->num_modes(); }
    int size() const { return basis_->size(); }
    std::size_t dimension() const { return basis_->dimension(); }
    const SectorBasis& basis() const { return *basis_; }
    bool uses_stencil() const { return !row_start_.empty(); }
    // Upper bound on the operator norm of T: the many-body bandwidth.
    double norm_bound() const { return norm_bound_; }

    void apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;

private:
    void apply_matrix_free(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;

    std::shared_ptr<const SectorBasis> basis_;
    std::vector<Mask> neighbours_;
    std::vector<double> coupling_;  // dense L x L, antisymmetric
    double norm_bound_ = 0.0;
    std::vector<std::uint64_t> row_start_;
    std::vector<std::uint32_t> col_;
    std::vector<double> val_;
};

// Dense T on one sector; small systems only.
Eigen::MatrixXd sector_matrix(const CouplingMatrix& j, int size);

// ---- Jordan-Wigner battery operators ----

enum class Axis { x, z };

struct BatteryTerm {
    MajoranaString string;
    std::complex<double> phase;
};

// sqrt(2/L) * sum_j sigma^a_j written over normalized Majorana strings.
struct BatteryOperator {
    Axis axis = Axis::x;
    int num_modes = 0;
    std::vector<BatteryTerm> terms;
    double normalization = 1.0;

    double frobenius_norm() const;
};

BatteryOperator battery_operator(Axis axis, int num_modes);

// ---- free-fermion fast path ----

// (O_to | O_from(t)) = det U(t)[from, to]: the minor of the single-particle
// propagator on rows `from` and columns `to` (same size).
double string_overlap(const Eigen::MatrixXd& u, Mask from, Mask to);

// (O_S | O_S(t)) = det U(t)[S,S].
double free_autocorrelation(const CouplingMatrix& j, MajoranaString s, double t);
double free_autocorrelation(const Propagator& u, MajoranaString s, double t);

}  // namespace opdeloc
