#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "opdeloc/netgen.hpp"

namespace opdeloc {

struct CouplingTerm {
    int a = 0;  // 0-based, a < b
    int b = 0;
    double value = 0.0;
};

// Real antisymmetric L x L coupling matrix of H = i sum_{a<b} J_ab g^a g^b.
// Only the upper triangle is stored; J(b,a) = -J(a,b) by construction.
class CouplingMatrix {
public:
    CouplingMatrix() = default;
    CouplingMatrix(int num_modes, std::vector<CouplingTerm> terms);

    int num_modes() const { return num_modes_; }
    const std::vector<CouplingTerm>& terms() const { return terms_; }

    double operator()(int a, int b) const {
        if (a < b) return upper_[a * num_modes_ + b];
        if (a > b) return -upper_[b * num_modes_ + a];
        return 0.0;
    }

    Eigen::MatrixXd dense() const;
    CouplingMatrix scaled(double factor) const;

private:
    int num_modes_ = 0;
    std::vector<CouplingTerm> terms_;
    std::vector<double> upper_;
};

// Accepts a dense matrix; rejects anything that is not antisymmetric to `tol`.
CouplingMatrix coupling_from_dense(const Eigen::MatrixXd& m, double tol = 1e-12);

enum class CouplingDistribution { gaussian, uniform };

// Mean zero, variance (L-1)/(2 n_E) on every edge unless `variance` is given.
CouplingMatrix sample_couplings(const Graph& g, Rng& rng,
                                std::optional<double> variance = std::nullopt,
                                CouplingDistribution dist = CouplingDistribution::gaussian);

double default_coupling_variance(const Graph& g);

struct SingleParticleSpectrum {
    std::vector<double> eps;  // L/2 paired singular values, descending
    double bandwidth() const;
};

SingleParticleSpectrum single_particle_spectrum(const CouplingMatrix& j);
double bandwidth(const CouplingMatrix& j);

CouplingMatrix rescale_to_unit_bandwidth(const CouplingMatrix& j);

// exp(J t): the orthogonal map g^i(t) = sum_j U_ij(t) g^j. Diagonalizes once,
// evaluates at any t.
class Propagator {
public:
    explicit Propagator(const CouplingMatrix& j);
    Eigen::MatrixXd operator()(double t) const;
    int num_modes() const { return static_cast<int>(freqs_.size()); }

private:
    Eigen::MatrixXcd vecs_;
    Eigen::VectorXd freqs_;
};

Eigen::MatrixXd propagator(const CouplingMatrix& j, double t);

// {"L": int, "triplets": [[a,b,value],...]}, 1-based, a < b.
nlohmann::json to_json(const CouplingMatrix& j);
CouplingMatrix couplings_from_json(const nlohmann::json& j);

}  // namespace opdeloc
