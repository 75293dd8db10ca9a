#include "doctest.h"

#include <cmath>

#include "opdeloc/couplings.hpp"
#include "opdeloc/dense_oracle.hpp"
#include "support.hpp"

using namespace opdeloc;

TEST_CASE("default variance follows (L-1)/(2 n_E)") {
    CHECK(default_coupling_variance(make_complete(8)) == doctest::Approx(1.0 / 8));
    CHECK(default_coupling_variance(make_star(8)) == doctest::Approx(0.5));
}

TEST_CASE("coupling statistics on the complete graph") {
    const Graph g = make_complete(6);
    Rng rng(11);
    const int n = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < n; ++r) {
        const auto j = sample_couplings(g, rng);
        const double x = j(0, 1);
        sum += x;
        sum2 += x * x;
        if (r == 0) {
            CHECK(j.terms().size() == 15u);
            CHECK(j(1, 0) == -j(0, 1));
        }
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 * std::sqrt(var / n));
    CHECK(var == doctest::Approx(1.0 / 6).epsilon(0.05));
}

TEST_CASE("uniform couplings keep the requested variance") {
    const Graph g = make_star(4);
    Rng rng(12);
    double sum2 = 0.0;
    const int n = 20000;
    for (int r = 0; r < n; ++r) {
        const auto j = sample_couplings(g, rng, 0.5, CouplingDistribution::uniform);
        sum2 += j(0, 3) * j(0, 3);
        CHECK(std::abs(j(0, 3)) <= std::sqrt(1.5) + 1e-12);
    }
    CHECK(sum2 / n == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("couplings live on graph edges only") {
    const auto j = testing::random_couplings(make_ring(8), 3);
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) {
            const bool edge = (b == a + 1) || (a == 0 && b == 7);
            if (!edge) CHECK(j(a, b) == 0.0);
        }
}

TEST_CASE("bandwidth closed forms") {
    for (int l : {4, 6, 10}) {
        std::vector<CouplingTerm> terms;
        for (int i = 0; i + 1 < l; ++i) terms.push_back({i, l - 1, 1.0});
        const CouplingMatrix star(l, terms);
        CHECK(bandwidth(star) == doctest::Approx(std::sqrt(l - 1.0)).epsilon(1e-12));
        const auto unit = rescale_to_unit_bandwidth(star);
        CHECK(unit(0, l - 1) == doctest::Approx(1.0 / std::sqrt(l - 1.0)).epsilon(1e-12));
    }
    const CouplingMatrix single(4, {{1, 2, -0.7}});
    CHECK(bandwidth(single) == doctest::Approx(0.7).epsilon(1e-12));

    Rng rng(4);
    const auto star = sample_couplings(make_star(8), rng, 0.5);
    double sum2 = 0.0;
    for (int i = 0; i < 7; ++i) sum2 += star(i, 7) * star(i, 7);
    CHECK(bandwidth(star) == doctest::Approx(std::sqrt(sum2)).epsilon(1e-12));
}

TEST_CASE("single-particle spectrum is paired, sorted and homogeneous") {
    const auto j = testing::random_couplings(make_complete(10), 5);
    const auto sp = single_particle_spectrum(j);
    REQUIRE(sp.eps.size() == 5u);
    for (std::size_t k = 0; k + 1 < sp.eps.size(); ++k) CHECK(sp.eps[k] >= sp.eps[k + 1]);
    CHECK(sp.eps.back() >= 0.0);
    CHECK(bandwidth(j.scaled(-2.5)) == doctest::Approx(2.5 * bandwidth(j)).epsilon(1e-12));
}

TEST_CASE("bandwidth matches the dense many-body spectrum") {
    for (int l : {4, 6, 8}) {
        const auto j = testing::random_couplings(make_complete(l), 100 + l);
        CHECK(std::abs(bandwidth(j) - dense_bandwidth(j)) < 1e-10);
    }
}

TEST_CASE("rescaling to unit bandwidth") {
    const auto j = testing::random_couplings(make_complete(8), 6);
    const auto u = rescale_to_unit_bandwidth(j);
    CHECK(std::abs(bandwidth(u) - 1.0) < 1e-12);
    const auto again = rescale_to_unit_bandwidth(u);
    CHECK((again.dense() - u.dense()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(rescale_to_unit_bandwidth(CouplingMatrix(4, {})), std::invalid_argument);
}

TEST_CASE("antisymmetry is enforced") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 1) = 1.0;
    m(1, 0) = -1.0;
    CHECK(coupling_from_dense(m)(1, 0) == -1.0);
    m(1, 0) = 0.5;
    CHECK_THROWS_AS(coupling_from_dense(m), std::invalid_argument);
    const auto j = testing::random_couplings(make_complete(6), 8);
    CHECK((j.dense() + j.dense().transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("propagator") {
    const CouplingMatrix single(2, {{0, 1, 0.8}});
    for (double t : {0.0, 0.3, 2.0, 7.5}) {
        const auto u = propagator(single, t);
        CHECK(u(0, 0) == doctest::Approx(std::cos(0.8 * t)).epsilon(1e-12));
        CHECK(u(0, 1) == doctest::Approx(std::sin(0.8 * t)).epsilon(1e-12));
        CHECK(u(1, 0) == doctest::Approx(-std::sin(0.8 * t)).epsilon(1e-12));
    }
    const auto j = testing::random_couplings(make_complete(10), 9);
    const Propagator prop(j);
    CHECK((prop(0.0) - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-12);
    for (double t = 0.0; t <= 10.0; t += 0.5) {
        const auto u = prop(t);
        CHECK((u.transpose() * u - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK((prop(1.3) * prop(2.1) - prop(3.4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("coupling json round trip") {
    const auto j = testing::random_couplings(make_star(5), 10);
    const auto js = to_json(j);
    CHECK(js["L"] == 5);
    CHECK(js["triplets"][0][0] == 1);
    CHECK(js["triplets"][0][1] == 5);
    const auto back = couplings_from_json(js);
    CHECK((back.dense() - j.dense()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS(couplings_from_json(nlohmann::json::parse(R"({"L": 3, "triplets": [[2, 1, 0.5]]})")));
}
