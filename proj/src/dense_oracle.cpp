#include "opdeloc/dense_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace opdeloc {

namespace {

using cd = std::complex<double>;

void require_cap(int num_modes, int cap, const char* what) {
    if (num_modes < 2 || num_modes % 2 != 0)
        throw std::invalid_argument(std::string(what) + ": L must be even and >= 2");
    if (num_modes > cap)
        throw std::invalid_argument(std::string(what) + ": L = " + std::to_string(num_modes) +
                                    " exceeds the dense cap of " + std::to_string(cap) +
                                    "; use the sector/Krylov path for larger systems");
}

// Product of single-site Paulis given as a string over {I,X,Y,Z}, site 0 first.
DenseOperator pauli_product(const std::string& ops) {
    const int sites = static_cast<int>(ops.size());
    const Eigen::Index dim = Eigen::Index{1} << sites;
    DenseOperator m = DenseOperator::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        cd phase = 1.0;
        Eigen::Index y = x;
        for (int k = 0; k < sites; ++k) {
            const bool bit = (x >> k) & 1;
            switch (ops[k]) {
                case 'X': y ^= Eigen::Index{1} << k; break;
                case 'Y': y ^= Eigen::Index{1} << k; phase *= cd(0.0, bit ? -1.0 : 1.0); break;
                case 'Z': if (bit) phase = -phase; break;
                default: break;
            }
        }
        m(y, x) = phase;
    }
    return m;
}

DenseOperator expm_hermitian(const Eigen::SelfAdjointEigenSolver<DenseOperator>& es, double t, double sign) {
    Eigen::VectorXcd phase(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phase.size(); ++k) phase(k) = std::polar(1.0, sign * es.eigenvalues()(k) * t);
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

std::vector<DenseOperator> dense_gammas(int num_modes) {
    require_cap(num_modes, kDenseGammaCap, "dense_gammas");
    const int sites = num_modes / 2;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<DenseOperator> g;
    for (int j = 0; j < sites; ++j) {
        std::string ops(sites, 'I');
        for (int i = 0; i < j; ++i) ops[i] = 'Z';
        ops[j] = 'X';
        g.push_back(inv_sqrt2 * pauli_product(ops));
        ops[j] = 'Y';
        g.push_back(inv_sqrt2 * pauli_product(ops));
    }
    return g;
}

DenseOperator dense_pauli(int sites, int site, char axis) {
    if (site < 0 || site >= sites) throw std::invalid_argument("dense_pauli: site out of range");
    std::string ops(sites, 'I');
    ops[site] = axis;
    return pauli_product(ops);
}

DenseOperator dense_string(const std::vector<DenseOperator>& gammas, Mask mask) {
    const Eigen::Index dim = gammas.front().rows();
    DenseOperator m = DenseOperator::Identity(dim, dim);
    int size = 0;
    for (Mask rest = mask; rest; rest &= rest - 1, ++size) m = m * gammas.at(std::countr_zero(rest));
    return std::pow(2.0, 0.5 * size) * m;
}

DenseOperator dense_hamiltonian(const std::vector<DenseOperator>& gammas, const CouplingMatrix& j) {
    const Eigen::Index dim = gammas.front().rows();
    DenseOperator h = DenseOperator::Zero(dim, dim);
    for (const auto& t : j.terms()) h += cd(0.0, t.value) * gammas.at(t.a) * gammas.at(t.b);
    return h;
}

DenseOperator dense_battery_hamiltonian(Axis axis, int num_modes) {
    require_cap(num_modes, kDenseGammaCap, "dense_battery_hamiltonian");
    const int sites = num_modes / 2;
    const Eigen::Index dim = Eigen::Index{1} << sites;
    DenseOperator h = DenseOperator::Zero(dim, dim);
    for (int s = 0; s < sites; ++s) h += dense_pauli(sites, s, axis == Axis::x ? 'X' : 'Z');
    return h;
}

std::complex<double> frobenius(const DenseOperator& a, const DenseOperator& b) {
    return (a.adjoint() * b).trace() / static_cast<double>(a.rows());
}

double dense_bandwidth(const CouplingMatrix& j) {
    const auto g = dense_gammas(j.num_modes());
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(dense_hamiltonian(g, j), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
}

namespace {

Eigen::MatrixXcd superoperator_sector_complex(const CouplingMatrix& j, int size) {
    require_cap(j.num_modes(), kDenseSuperoperatorCap, "dense_superoperator_sector");
    const auto g = dense_gammas(j.num_modes());
    const auto h = dense_hamiltonian(g, j);
    const auto basis = sector_basis(j.num_modes(), size);
    const auto dim = static_cast<Eigen::Index>(basis->dimension());
    std::vector<DenseOperator> strings;
    for (Eigen::Index k = 0; k < dim; ++k) strings.push_back(dense_string(g, basis->mask(k)));
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        const DenseOperator comm = h * strings[c] - strings[c] * h;
        for (Eigen::Index r = 0; r < dim; ++r) m(r, c) = frobenius(strings[r], comm) / cd(0.0, 1.0);
    }
    return m;
}

}  // namespace

Eigen::MatrixXd dense_superoperator_sector(const CouplingMatrix& j, int size) {
    return superoperator_sector_complex(j, size).real();
}

double dense_superoperator_max_imag(const CouplingMatrix& j, int size) {
    return superoperator_sector_complex(j, size).imag().cwiseAbs().maxCoeff();
}

namespace {

struct Quench {
    DenseOperator h0;
    Eigen::VectorXcd ground;
    double e0;
    Eigen::SelfAdjointEigenSolver<DenseOperator> h1;
};

Quench prepare_quench(const CouplingMatrix& j, Axis axis) {
    require_cap(j.num_modes(), kDenseEvolutionCap, "dense_evolution_power");
    const auto g = dense_gammas(j.num_modes());
    Quench q;
    q.h0 = dense_battery_hamiltonian(axis, j.num_modes());
    Eigen::SelfAdjointEigenSolver<DenseOperator> es0(q.h0);
    q.ground = es0.eigenvectors().col(0);
    q.e0 = es0.eigenvalues()(0);
    DenseOperator h1 = dense_hamiltonian(g, j);
    Eigen::SelfAdjointEigenSolver<DenseOperator> probe(h1, Eigen::EigenvaluesOnly);
    const double mu = probe.eigenvalues().maxCoeff() - probe.eigenvalues().minCoeff();
    if (!(mu > 0.0)) throw std::invalid_argument("dense_evolution_power: zero-bandwidth quench");
    q.h1.compute(h1 / mu);
    return q;
}

}  // namespace

PowerSeries dense_evolution_power(const CouplingMatrix& j, Axis axis, const std::vector<double>& times) {
    const auto q = prepare_quench(j, axis);
    std::vector<double> energy(times.size());
    const Eigen::VectorXcd coeffs = q.h1.eigenvectors().adjoint() * q.ground;
    for (std::size_t i = 0; i < times.size(); ++i) {
        Eigen::VectorXcd phased(coeffs.size());
        for (Eigen::Index k = 0; k < coeffs.size(); ++k)
            phased(k) = coeffs(k) * std::polar(1.0, -q.h1.eigenvalues()(k) * times[i]);
        const Eigen::VectorXcd psi = q.h1.eigenvectors() * phased;
        energy[i] = psi.dot(q.h0 * psi).real() - q.e0;
    }
    return power_from_energy(times, energy);
}

std::vector<double> dense_return_amplitude(const CouplingMatrix& j, Axis axis, const std::vector<double>& times) {
    const auto q = prepare_quench(j, axis);
    const double norm = frobenius(q.h0, q.h0).real();
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const DenseOperator u = expm_hermitian(q.h1, times[i], -1.0);  // exp(-i H t)
        const DenseOperator evolved = u.adjoint() * q.h0 * u;
        out[i] = frobenius(q.h0, evolved).real() / norm;
    }
    return out;
}

}  // namespace opdeloc
