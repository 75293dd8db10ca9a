#include "opdeloc/krylov.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace opdeloc {

namespace {

// Two passes of classical Gram-Schmidt against the stored basis.
void reorthogonalize(const std::vector<Eigen::VectorXd>& basis, Eigen::VectorXd& w) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) w.noalias() -= q.dot(w) * q;
}

}  // namespace

LanczosData lanczos(const SectorLiouvillian& op, const Eigen::VectorXd& v0, const LanczosOptions& options) {
    if (options.max_dim < 1) throw std::invalid_argument("lanczos: n_max must be >= 1");
    if (static_cast<std::size_t>(v0.size()) != op.dimension())
        throw std::invalid_argument("lanczos: initial vector is not in the operator's sector");
    if (std::abs(v0.norm() - 1.0) > 1e-12) throw std::invalid_argument("lanczos: initial operator must be normalized");

    const double tol = options.rel_tol * std::max(op.norm_bound(), std::numeric_limits<double>::min());
    const auto cap = static_cast<int>(std::min<std::size_t>(options.max_dim, op.dimension()));

    LanczosData out;
    std::vector<Eigen::VectorXd> basis;
    basis.push_back(v0);
    Eigen::VectorXd w(v0.size());
    double b_prev = 0.0;
    for (int n = 0;; ++n) {
        if (static_cast<int>(basis.size()) == cap) {
            // The sector dimension bounds K; hitting max_dim below that is a truncation.
            if (cap == options.max_dim && cap < static_cast<int>(op.dimension())) {
                op.apply(basis[n], w);
                if (n > 0) w.noalias() += b_prev * basis[n - 1];
                reorthogonalize(basis, w);
                out.truncated = w.norm() >= tol;
            }
            break;
        }
        op.apply(basis[n], w);
        if (n > 0) w.noalias() += b_prev * basis[n - 1];
        reorthogonalize(basis, w);
        const double b = w.norm();
        if (!(b >= tol)) break;
        out.b.push_back(b);
        basis.push_back(w / b);
        b_prev = b;
    }
    out.krylov_dim = static_cast<int>(basis.size());
    if (options.keep_basis) out.basis = std::move(basis);
    return out;
}

LanczosData lanczos(const CouplingMatrix& j, const SectorVector& v0, const LanczosOptions& options) {
    if (v0.num_modes != j.num_modes()) throw std::invalid_argument("lanczos: mode count mismatch");
    SectorLiouvillian op(j, v0.size);
    return lanczos(op, v0.amp, options);
}

KrylovAmplitudes evolve_amplitudes(const LanczosData& ld, const std::vector<double>& times) {
    if (times.empty()) throw std::invalid_argument("evolve_amplitudes: empty time grid");
    const int k = ld.krylov_dim;
    if (k < 1 || static_cast<int>(ld.b.size()) != k - 1)
        throw std::invalid_argument("evolve_amplitudes: inconsistent Lanczos data");

    KrylovAmplitudes out;
    out.times = times;
    out.phi.resize(static_cast<Eigen::Index>(times.size()), k);
    if (k == 1) {
        out.phi.setOnes();
        return out;
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd off(k - 1);
    for (int n = 0; n < k - 1; ++n) off(n) = ld.b[n];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    const Eigen::VectorXd& lambda = es.eigenvalues();
    const Eigen::MatrixXd& v = es.eigenvectors();

    // phi_n(t) = i^{-n} [exp(i B t)]_{n0}; even n picks the cosine part,
    // odd n the sine part, with sign (-1)^{floor(n/2)}.
    Eigen::MatrixXd weights(k, k);
    for (int n = 0; n < k; ++n)
        for (int m = 0; m < k; ++m) weights(n, m) = v(n, m) * v(0, m) * (((n / 2) % 2) ? -1.0 : 1.0);

    Eigen::VectorXd c(k), s(k);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] == 0.0) {
            out.phi.row(static_cast<Eigen::Index>(i)).setZero();
            out.phi(static_cast<Eigen::Index>(i), 0) = 1.0;
            continue;
        }
        for (int m = 0; m < k; ++m) {
            c(m) = std::cos(lambda(m) * times[i]);
            s(m) = std::sin(lambda(m) * times[i]);
        }
        for (int n = 0; n < k; ++n)
            out.phi(static_cast<Eigen::Index>(i), n) = weights.row(n).dot(n % 2 ? s : c);
    }
    return out;
}

ComplexitySeries k_complexity(const KrylovAmplitudes& amps) {
    ComplexitySeries out;
    out.times = amps.times;
    out.ck.resize(amps.times.size());
    const Eigen::Index k = amps.phi.cols();
    Eigen::VectorXd index = Eigen::VectorXd::LinSpaced(k, 0.0, static_cast<double>(k - 1));
    for (Eigen::Index i = 0; i < amps.phi.rows(); ++i)
        out.ck[i] = amps.phi.row(i).cwiseAbs2().dot(index.transpose());
    return out;
}

RatioResult delocalization_ratio(const ComplexitySeries& large, const ComplexitySeries& small,
                                 double t_lo, double t_hi) {
    if (large.times.size() != small.times.size())
        throw std::invalid_argument("delocalization_ratio: series use different time grids");
    if (!(t_lo <= t_hi)) throw std::invalid_argument("delocalization_ratio: empty window");
    std::vector<double> ratios;
    for (std::size_t i = 0; i < large.times.size(); ++i) {
        if (std::abs(large.times[i] - small.times[i]) > 1e-12)
            throw std::invalid_argument("delocalization_ratio: series use different time grids");
        const double t = large.times[i];
        if (t < t_lo - 1e-12 || t > t_hi + 1e-12) continue;
        if (std::abs(small.ck[i]) < 1e-12)
            throw std::domain_error("delocalization_ratio: small-operator complexity vanishes in window");
        ratios.push_back(large.ck[i] / small.ck[i]);
    }
    if (ratios.empty()) throw std::invalid_argument("delocalization_ratio: no grid points in window");
    RatioResult out;
    out.points = static_cast<int>(ratios.size());
    double sum = 0.0;
    for (double r : ratios) sum += r;
    out.ratio = sum / ratios.size();
    double var = 0.0;
    for (double r : ratios) var += (r - out.ratio) * (r - out.ratio);
    var /= ratios.size();
    out.flatness = std::sqrt(var) / std::abs(out.ratio);
    return out;
}

std::vector<double> time_grid(double t_max, double dt) {
    if (!(dt > 0.0) || !(t_max >= 0.0)) throw std::invalid_argument("time_grid: need dt > 0, t_max >= 0");
    const auto steps = static_cast<long>(std::floor(t_max / dt + 1e-9));
    std::vector<double> grid(steps + 1);
    for (long i = 0; i <= steps; ++i) grid[i] = static_cast<double>(i) * dt;
    return grid;
}

int krylov_dim_for_horizon(double t_max, double norm_bound, double eps) {
    const double x = std::abs(t_max * norm_bound);
    double term = 1.0;  // x^n / n!
    int n = 0;
    while (true) {
        ++n;
        term *= x / n;
        if (term < eps && n > x) return n + 1;
        if (n > 100000) return n;
    }
}

}  // namespace opdeloc
