#include "opdeloc/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace opdeloc {

CouplingMatrix::CouplingMatrix(int num_modes, std::vector<CouplingTerm> terms)
    : num_modes_(num_modes),
      terms_(std::move(terms)),
      upper_(static_cast<std::size_t>(num_modes) * num_modes, 0.0) {
    if (num_modes < 1) throw std::invalid_argument("coupling matrix needs at least one mode");
    std::vector<char> seen(upper_.size(), 0);
    for (auto& t : terms_) {
        if (t.a > t.b) {
            std::swap(t.a, t.b);
            t.value = -t.value;
        }
        if (t.a < 0 || t.b >= num_modes_ || t.a == t.b)
            throw std::invalid_argument("invalid coupling indices");
        auto idx = static_cast<std::size_t>(t.a) * num_modes_ + t.b;
        if (seen[idx]) throw std::invalid_argument("duplicate coupling term");
        seen[idx] = 1;
        upper_[idx] = t.value;
    }
}

Eigen::MatrixXd CouplingMatrix::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(num_modes_, num_modes_);
    for (const auto& t : terms_) {
        m(t.a, t.b) = t.value;
        m(t.b, t.a) = -t.value;
    }
    return m;
}

CouplingMatrix CouplingMatrix::scaled(double factor) const {
    auto terms = terms_;
    for (auto& t : terms) t.value *= factor;
    return CouplingMatrix(num_modes_, std::move(terms));
}

CouplingMatrix coupling_from_dense(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("coupling matrix must be square");
    const double defect = (m + m.transpose()).cwiseAbs().maxCoeff();
    if (defect > tol)
        throw std::invalid_argument("coupling matrix is not antisymmetric (defect " +
                                    std::to_string(defect) + ")");
    std::vector<CouplingTerm> terms;
    for (int a = 0; a < m.rows(); ++a)
        for (int b = a + 1; b < m.cols(); ++b)
            if (m(a, b) != 0.0) terms.push_back({a, b, m(a, b)});
    return CouplingMatrix(static_cast<int>(m.rows()), std::move(terms));
}

double default_coupling_variance(const Graph& g) {
    return static_cast<double>(g.num_vertices() - 1) / (2.0 * g.num_edges());
}

CouplingMatrix sample_couplings(const Graph& g, Rng& rng, std::optional<double> variance,
                                CouplingDistribution dist) {
    if (g.num_edges() < 1) throw std::invalid_argument("graph has no edges");
    const double var = variance.value_or(default_coupling_variance(g));
    if (!(var > 0.0)) throw std::invalid_argument("coupling variance must be positive");
    std::vector<CouplingTerm> terms;
    terms.reserve(g.num_edges());
    if (dist == CouplingDistribution::gaussian) {
        std::normal_distribution<double> normal(0.0, std::sqrt(var));
        for (const auto& e : g.edges()) terms.push_back({e.a, e.b, normal(rng)});
    } else {
        const double half_width = std::sqrt(3.0 * var);
        std::uniform_real_distribution<double> uniform(-half_width, half_width);
        for (const auto& e : g.edges()) terms.push_back({e.a, e.b, uniform(rng)});
    }
    return CouplingMatrix(g.num_vertices(), std::move(terms));
}

double SingleParticleSpectrum::bandwidth() const {
    return std::accumulate(eps.begin(), eps.end(), 0.0);
}

SingleParticleSpectrum single_particle_spectrum(const CouplingMatrix& j) {
    // i*J is Hermitian with eigenvalues +-eps_k (plus a zero for odd L).
    const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * j.dense().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const int n = static_cast<int>(ev.size());
    SingleParticleSpectrum out;
    for (int k = 0; k < n / 2; ++k) out.eps.push_back(std::max(0.0, ev(n - 1 - k)));
    return out;
}

double bandwidth(const CouplingMatrix& j) { return single_particle_spectrum(j).bandwidth(); }

CouplingMatrix rescale_to_unit_bandwidth(const CouplingMatrix& j) {
    const double mu = bandwidth(j);
    if (!(mu > 0.0)) throw std::invalid_argument("cannot rescale a zero-bandwidth Hamiltonian");
    return j.scaled(1.0 / mu);
}

Propagator::Propagator(const CouplingMatrix& j) {
    const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * j.dense().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    vecs_ = es.eigenvectors();
    freqs_ = es.eigenvalues();
}

Eigen::MatrixXd Propagator::operator()(double t) const {
    // J = -i V diag(w) V^dagger, so exp(J t) = V diag(exp(-i w t)) V^dagger.
    Eigen::VectorXcd phase(freqs_.size());
    for (Eigen::Index k = 0; k < freqs_.size(); ++k)
        phase(k) = std::polar(1.0, -freqs_(k) * t);
    return (vecs_ * phase.asDiagonal() * vecs_.adjoint()).real();
}

Eigen::MatrixXd propagator(const CouplingMatrix& j, double t) { return Propagator(j)(t); }

nlohmann::json to_json(const CouplingMatrix& j) {
    nlohmann::json triplets = nlohmann::json::array();
    for (const auto& t : j.terms()) triplets.push_back({t.a + 1, t.b + 1, t.value});
    return {{"L", j.num_modes()}, {"triplets", std::move(triplets)}};
}

CouplingMatrix couplings_from_json(const nlohmann::json& j) {
    const int n = j.at("L").get<int>();
    std::vector<CouplingTerm> terms;
    for (const auto& t : j.at("triplets")) {
        if (!t.is_array() || t.size() != 3) throw std::invalid_argument("triplet must be [a,b,value]");
        const int a = t[0].get<int>();
        const int b = t[1].get<int>();
        if (a >= b) throw std::invalid_argument("triplet requires a < b");
        terms.push_back({a - 1, b - 1, t[2].get<double>()});
    }
    return CouplingMatrix(n, std::move(terms));
}

}  // namespace opdeloc
