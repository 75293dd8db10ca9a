#include "doctest.h"

#include <cmath>

#include "opdeloc/dense_oracle.hpp"
#include "opdeloc/krylov.hpp"
#include "opdeloc/opspace.hpp"
#include "support.hpp"

using namespace opdeloc;

namespace {

SectorVector apply_to(const CouplingMatrix& j, std::vector<int> modes) {
    return apply_liouvillian(j, basis_vector(j.num_modes(), MajoranaString::from_modes(modes)));
}

double amp(const SectorVector& v, std::vector<int> modes) {
    return v.amp(static_cast<Eigen::Index>(colex_rank(MajoranaString::from_modes(modes).mask)));
}

}  // namespace

TEST_CASE("sign rule examples") {
    const double j = 0.37;
    const CouplingMatrix two(2, {{0, 1, j}});
    CHECK(amp(apply_to(two, {0}), {1}) == doctest::Approx(-j));
    CHECK(amp(apply_to(two, {1}), {0}) == doctest::Approx(j));

    const CouplingMatrix three(3, {{0, 2, j}});
    const auto w = apply_to(three, {0, 1});
    CHECK(amp(w, {1, 2}) == doctest::Approx(j));
    CHECK(amp(w, {0, 1}) == 0.0);
    CHECK(amp(w, {0, 2}) == 0.0);
}

TEST_CASE("star hub absorbs a size-1 string") {
    Rng rng(1);
    const auto j = sample_couplings(make_star(6), rng, 0.5);
    const auto w = apply_to(j, {0});
    CHECK(std::abs(amp(w, {5})) == doctest::Approx(std::abs(j(0, 5))));
    CHECK(w.norm() == doctest::Approx(std::abs(j(0, 5))));
}

TEST_CASE("liouvillian matches the string-algebra commutator") {
    for (int l : {4, 6, 8}) {
        const auto j = testing::random_couplings(make_complete(l), 50 + l);
        const int modes = j.num_modes();
        for (int s = 1; s <= modes; ++s) {
            const auto t = sector_matrix(j, s);
            const auto basis = sector_basis(modes, s);
            for (std::size_t c = 0; c < basis->dimension(); ++c) {
                const auto col = testing::commutator_column(j, basis->mask(c));
                Eigen::VectorXd expected = Eigen::VectorXd::Zero(t.rows());
                for (const auto& [mask, value] : col) {
                    REQUIRE(std::popcount(mask) == s);
                    expected(static_cast<Eigen::Index>(basis->index(mask))) += value;
                }
                REQUIRE((t.col(static_cast<Eigen::Index>(c)) - expected).cwiseAbs().maxCoeff() < 1e-14);
            }
        }
    }
}

TEST_CASE("liouvillian matches the dense commutator oracle") {
    for (int l : {4, 6, 8}) {
        const auto j = testing::random_couplings(make_complete(l), 200 + l);
        for (int s = 1; s <= l; ++s)
            CHECK((sector_matrix(j, s) - dense_superoperator_sector(j, s)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("generator is antisymmetric") {
    Rng rng(3);
    WattsStrogatzParams ws{2, 0.4};
    const auto j = sample_couplings(watts_strogatz(12, ws, rng), rng);
    const auto v = testing::random_unit(static_cast<Eigen::Index>(binomial(12, 5)), 1);
    const auto w = testing::random_unit(v.size(), 2);
    SectorVector sv{12, 5, v}, sw{12, 5, w};
    const double lhs = w.dot(apply_liouvillian(j, sv).amp);
    const double rhs = -apply_liouvillian(j, sw).amp.dot(v);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("reference, stencil and matrix-free kernels agree") {
    const auto j = testing::random_couplings(make_complete(12), 4);
    for (int s : {1, 5, 6}) {
        const auto dim = static_cast<Eigen::Index>(binomial(12, s));
        SectorVector v{12, s, testing::random_unit(dim, 9)};
        const auto ref = apply_liouvillian_reference(j, v);
        const SectorLiouvillian stencil(j, s, SectorLiouvillian::Storage::stencil);
        const SectorLiouvillian gather(j, s, SectorLiouvillian::Storage::matrix_free);
        CHECK(stencil.uses_stencil());
        CHECK_FALSE(gather.uses_stencil());
        Eigen::VectorXd a(dim), b(dim);
        stencil.apply(v.amp, a);
        gather.apply(v.amp, b);
        CHECK((a - ref.amp).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((b - ref.amp).cwiseAbs().maxCoeff() < 1e-13);
        const SectorLiouvillian tiny_budget(j, s, SectorLiouvillian::Storage::automatic, 16);
        CHECK_FALSE(tiny_budget.uses_stencil());
    }
}

TEST_CASE("sector mismatch is rejected") {
    const auto j = testing::random_couplings(make_complete(6), 5);
    SectorVector v{6, 2, Eigen::VectorXd::Zero(3)};
    CHECK_THROWS_AS(apply_liouvillian(j, v), std::invalid_argument);
    SectorVector other{8, 2, Eigen::VectorXd::Zero(28)};
    CHECK_THROWS_AS(apply_liouvillian(j, other), std::invalid_argument);
}

TEST_CASE("battery operators") {
    const auto z = battery_operator(Axis::z, 4);
    REQUIRE(z.terms.size() == 2u);
    CHECK(z.terms[0].string.mask == 0b0011u);
    CHECK(z.terms[1].string.mask == 0b1100u);
    CHECK(z.frobenius_norm() == doctest::Approx(1.0));

    const auto x = battery_operator(Axis::x, 4);
    REQUIRE(x.terms.size() == 2u);
    CHECK(x.terms[0].string.size() == 1);
    CHECK(x.terms[1].string.size() == 3);
    CHECK(x.frobenius_norm() == doctest::Approx(1.0));
    CHECK_THROWS_AS(battery_operator(Axis::x, 5), std::invalid_argument);

    // The assembled strings reproduce sqrt(2/L) sum_j sigma^a_j as matrices.
    for (int l : {4, 6}) {
        const auto g = dense_gammas(l);
        for (Axis axis : {Axis::x, Axis::z}) {
            const auto op = battery_operator(axis, l);
            DenseOperator m = DenseOperator::Zero(g[0].rows(), g[0].cols());
            for (const auto& t : op.terms) m += op.normalization * t.phase * dense_string(g, t.string.mask);
            const DenseOperator expected = std::sqrt(2.0 / l) * dense_battery_hamiltonian(axis, l);
            CHECK((m - expected).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("free autocorrelation fast path") {
    const auto j = rescale_to_unit_bandwidth(testing::random_couplings(make_complete(6), 12));
    CHECK(free_autocorrelation(j, MajoranaString::from_modes({1, 3}), 0.0) == doctest::Approx(1.0));
    const auto u = propagator(j, 1.7);
    CHECK(free_autocorrelation(j, MajoranaString::from_modes({2}), 1.7) == doctest::Approx(u(2, 2)).epsilon(1e-12));

    const auto s = MajoranaString::from_modes({0, 4});
    const auto amps = evolve_amplitudes(lanczos(j, basis_vector(6, s)), time_grid(10.0, 0.05));
    const Propagator prop(j);
    double err = 0.0;
    for (std::size_t i = 0; i < amps.times.size(); ++i)
        err = std::max(err, std::abs(amps.phi(i, 0) - free_autocorrelation(prop, s, amps.times[i])));
    CHECK(err < 1e-8);
}

TEST_CASE("string overlap equals the dense Heisenberg overlap") {
    const auto j = rescale_to_unit_bandwidth(testing::random_couplings(make_complete(6), 13));
    const auto g = dense_gammas(6);
    const auto h = dense_hamiltonian(g, j);
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(h);
    const double t = 0.9;
    Eigen::VectorXcd phase(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phase.size(); ++k) phase(k) = std::polar(1.0, es.eigenvalues()(k) * t);
    const DenseOperator u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();  // exp(iHt)
    const auto prop = propagator(j, t);
    const Mask from = 0b000101, to = 0b010010;
    const DenseOperator evolved = u * dense_string(g, from) * u.adjoint();
    CHECK(frobenius(dense_string(g, to), evolved).real() == doctest::Approx(string_overlap(prop, from, to)).epsilon(1e-10));
}
