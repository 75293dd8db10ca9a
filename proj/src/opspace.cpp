#include "opdeloc/opspace.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace opdeloc {

namespace {

inline Mask strictly_between(int x, int y) {
    const int lo = x < y ? x : y;
    const int hi = x < y ? y : x;
    return low_bits(hi) & ~low_bits(lo + 1);
}

inline double parity(Mask m) { return (std::popcount(m) & 1) ? -1.0 : 1.0; }

void check_sector(int num_modes, int size) {
    if (num_modes < 1 || num_modes > kMaxModes)
        throw std::invalid_argument("mode count must lie in [1, " + std::to_string(kMaxModes) + "]");
    if (size < 0 || size > num_modes) throw std::invalid_argument("string size out of range");
}

}  // namespace

MajoranaString MajoranaString::from_modes(const std::vector<int>& modes) {
    Mask m = 0;
    for (int i : modes) {
        if (i < 0 || i >= kMaxModes) throw std::invalid_argument("mode index out of range");
        if (m & (Mask{1} << i)) throw std::invalid_argument("repeated mode in string");
        m |= Mask{1} << i;
    }
    return {m};
}

SectorBasis::SectorBasis(int num_modes, int size)
    : num_modes_(num_modes), size_(size), ranks_(num_modes) {
    check_sector(num_modes, size);
    const std::uint64_t dim = binomial(num_modes, size);
    if (dim > (std::uint64_t{1} << 31)) throw std::length_error("sector too large to enumerate");
    masks_.resize(dim);
    Mask m = low_bits(size);
    for (std::uint64_t i = 0; i < dim; ++i) {
        masks_[i] = m;
        if (size > 0 && i + 1 < dim) m = next_combination(m);
    }
}

std::shared_ptr<const SectorBasis> sector_basis(int num_modes, int size) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const SectorBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{num_modes, size}];
    if (!slot) slot = std::make_shared<const SectorBasis>(num_modes, size);
    return slot;
}

SectorVector zero_vector(int num_modes, int size) {
    check_sector(num_modes, size);
    return {num_modes, size, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(binomial(num_modes, size)))};
}

SectorVector basis_vector(int num_modes, MajoranaString s) {
    if (s.mask & ~low_bits(num_modes)) throw std::invalid_argument("string uses modes beyond L");
    auto v = zero_vector(num_modes, s.size());
    v.amp(static_cast<Eigen::Index>(colex_rank(s.mask))) = 1.0;
    return v;
}

SectorVector apply_liouvillian_reference(const CouplingMatrix& j, const SectorVector& v) {
    if (v.num_modes != j.num_modes()) throw std::invalid_argument("sector mismatch: mode count");
    const auto dim = binomial(v.num_modes, v.size);
    if (static_cast<std::uint64_t>(v.amp.size()) != dim)
        throw std::invalid_argument("sector mismatch: vector length");
    SectorVector out = zero_vector(v.num_modes, v.size);
    if (v.size == 0) return out;
    Mask s = low_bits(v.size);
    for (std::uint64_t i = 0; i < dim; ++i, s = (i < dim ? next_combination(s) : s)) {
        const double coeff = v.amp(static_cast<Eigen::Index>(i));
        if (coeff == 0.0) continue;
        for (const auto& t : j.terms()) {
            const bool in_a = (s >> t.a) & 1;
            const bool in_b = (s >> t.b) & 1;
            if (in_a == in_b) continue;
            const double sign_m = parity(s & strictly_between(t.a, t.b));
            const double sigma = in_a ? -sign_m : sign_m;
            const Mask target = s ^ ((Mask{1} << t.a) | (Mask{1} << t.b));
            out.amp(static_cast<Eigen::Index>(colex_rank(target))) += t.value * sigma * coeff;
        }
    }
    return out;
}

SectorLiouvillian::SectorLiouvillian(const CouplingMatrix& j, int size, Storage storage,
                                     std::size_t stencil_budget_bytes)
    : basis_(sector_basis(j.num_modes(), size)) {
    const int n = j.num_modes();
    neighbours_.assign(n, 0);
    coupling_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto& t : j.terms()) {
        neighbours_[t.a] |= Mask{1} << t.b;
        neighbours_[t.b] |= Mask{1} << t.a;
        coupling_[t.a * n + t.b] = t.value;
        coupling_[t.b * n + t.a] = -t.value;
    }
    norm_bound_ = bandwidth(j);
    if (storage == Storage::matrix_free) return;

    const auto dim = static_cast<std::int64_t>(basis_->dimension());
    std::vector<std::uint64_t> counts(dim + 1, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t row = 0; row < dim; ++row) {
        const Mask s = basis_->mask(row);
        std::uint64_t c = 0;
        for (Mask rest = s; rest; rest &= rest - 1)
            c += std::popcount(neighbours_[std::countr_zero(rest)] & ~s);
        counts[row + 1] = c;
    }
    for (std::int64_t row = 0; row < dim; ++row) counts[row + 1] += counts[row];
    const std::uint64_t nnz = counts[dim];
    const std::size_t bytes = nnz * (sizeof(std::uint32_t) + sizeof(double)) + counts.size() * sizeof(std::uint64_t);
    if (storage == Storage::automatic && bytes > stencil_budget_bytes) return;

    row_start_ = std::move(counts);
    col_.resize(nnz);
    val_.resize(nnz);
    const auto& ranks = basis_->ranks();
#pragma omp parallel for schedule(static)
    for (std::int64_t row = 0; row < dim; ++row) {
        const Mask s = basis_->mask(row);
        std::uint64_t k = row_start_[row];
        for (Mask rest = s; rest; rest &= rest - 1) {
            const int x = std::countr_zero(rest);
            for (Mask out = neighbours_[x] & ~s; out; out &= out - 1) {
                const int y = std::countr_zero(out);
                col_[k] = static_cast<std::uint32_t>(ranks.rank(s ^ ((Mask{1} << x) | (Mask{1} << y))));
                val_[k] = coupling_[x * n + y] * parity(s & strictly_between(x, y));
                ++k;
            }
        }
    }
}

void SectorLiouvillian::apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
    const auto dim = static_cast<std::int64_t>(dimension());
    if (in.size() != dim) throw std::invalid_argument("sector mismatch: vector length");
    out.resize(dim);
    if (!uses_stencil()) {
        apply_matrix_free(in, out);
        return;
    }
    const double* x = in.data();
    double* y = out.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t row = 0; row < dim; ++row) {
        double acc = 0.0;
        for (std::uint64_t k = row_start_[row]; k < row_start_[row + 1]; ++k) acc += val_[k] * x[col_[k]];
        y[row] = acc;
    }
}

// Gather form of the hopping rule: by antisymmetry of T,
//   (T v)_{S'} = sum_{x in S', y ~ x, y notin S'} J(x,y) (-1)^{m(S';x,y)} v_{S'-x+y}.
void SectorLiouvillian::apply_matrix_free(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
    const auto dim = static_cast<std::int64_t>(dimension());
    const int n = num_modes();
    const auto& ranks = basis_->ranks();
    const double* x_in = in.data();
    double* y_out = out.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t row = 0; row < dim; ++row) {
        const Mask s = basis_->mask(row);
        double acc = 0.0;
        for (Mask rest = s; rest; rest &= rest - 1) {
            const int x = std::countr_zero(rest);
            for (Mask out_bits = neighbours_[x] & ~s; out_bits; out_bits &= out_bits - 1) {
                const int y = std::countr_zero(out_bits);
                const auto col = ranks.rank(s ^ ((Mask{1} << x) | (Mask{1} << y)));
                acc += coupling_[x * n + y] * parity(s & strictly_between(x, y)) * x_in[col];
            }
        }
        y_out[row] = acc;
    }
}

SectorVector apply_liouvillian(const CouplingMatrix& j, const SectorVector& v) {
    if (v.num_modes != j.num_modes()) throw std::invalid_argument("sector mismatch: mode count");
    SectorLiouvillian op(j, v.size, SectorLiouvillian::Storage::matrix_free);
    SectorVector out{v.num_modes, v.size, {}};
    op.apply(v.amp, out.amp);
    return out;
}

Eigen::MatrixXd sector_matrix(const CouplingMatrix& j, int size) {
    const auto dim = static_cast<Eigen::Index>(binomial(j.num_modes(), size));
    if (dim > 20000) throw std::length_error("sector_matrix: sector too large for a dense matrix");
    Eigen::MatrixXd t(dim, dim);
    auto e = zero_vector(j.num_modes(), size);
    for (Eigen::Index c = 0; c < dim; ++c) {
        e.amp.setZero();
        e.amp(c) = 1.0;
        t.col(c) = apply_liouvillian_reference(j, e).amp;
    }
    return t;
}

double BatteryOperator::frobenius_norm() const {
    double sum = 0.0;
    for (const auto& t : terms) sum += std::norm(t.phase);
    return normalization * std::sqrt(sum);
}

BatteryOperator battery_operator(Axis axis, int num_modes) {
    if (num_modes < 2 || num_modes % 2 != 0 || num_modes > kMaxModes)
        throw std::invalid_argument("battery operator needs an even mode count");
    BatteryOperator op;
    op.axis = axis;
    op.num_modes = num_modes;
    op.normalization = std::sqrt(2.0 / num_modes);
    const std::complex<double> minus_i(0.0, -1.0);
    std::complex<double> phase(1.0, 0.0);
    for (int j = 1; j <= num_modes / 2; ++j) {
        if (axis == Axis::x) {
            // sigma^x_j = (sqrt 2)^{2j-1} (-i)^{j-1} g^1 ... g^{2j-1}
            op.terms.push_back({MajoranaString::prefix(2 * j - 1), phase});
            phase *= minus_i;
        } else {
            // sigma^z_j = -2i g^{2j-1} g^{2j}
            op.terms.push_back({MajoranaString::from_modes({2 * j - 2, 2 * j - 1}), minus_i});
        }
    }
    return op;
}

double string_overlap(const Eigen::MatrixXd& u, Mask from, Mask to) {
    const int s = std::popcount(from);
    if (std::popcount(to) != s) throw std::invalid_argument("string_overlap: size mismatch");
    if (s == 0) return 1.0;
    Eigen::MatrixXd minor(s, s);
    int r = 0;
    for (Mask rows = from; rows; rows &= rows - 1, ++r) {
        const int i = std::countr_zero(rows);
        int c = 0;
        for (Mask cols = to; cols; cols &= cols - 1, ++c) minor(r, c) = u(i, std::countr_zero(cols));
    }
    if (s == 1) return minor(0, 0);
    return minor.partialPivLu().determinant();
}

double free_autocorrelation(const Propagator& u, MajoranaString s, double t) {
    return string_overlap(u(t), s.mask, s.mask);
}

double free_autocorrelation(const CouplingMatrix& j, MajoranaString s, double t) {
    return free_autocorrelation(Propagator(j), s, t);
}

}  // namespace opdeloc
