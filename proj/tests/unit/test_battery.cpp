#include "doctest.h"

#include <cmath>

#include "opdeloc/battery.hpp"
#include "opdeloc/dense_oracle.hpp"
#include "support.hpp"

using namespace opdeloc;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

CouplingMatrix unit_quench(int l, std::uint64_t seed) {
    return rescale_to_unit_bandwidth(testing::random_couplings(make_complete(l), seed));
}

}  // namespace

TEST_CASE("peak of (1 - cos t)/t") {
    const auto peak = max_power([](double t) { return (1.0 - std::cos(t)) / t; }, time_grid(4.0, 0.5));
    CHECK(peak.p_max == doctest::Approx(0.724611).epsilon(1e-6));
    CHECK(peak.t_star == doctest::Approx(2.331122).epsilon(1e-5));

    // sampled version: interpolation recovers the peak from a coarse grid
    const auto grid = time_grid(6.0, 0.1);
    std::vector<double> p(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) p[i] = grid[i] > 0 ? (1.0 - std::cos(grid[i])) / grid[i] : 0.0;
    const auto sampled = max_power(grid, p);
    CHECK(sampled.p_max == doctest::Approx(0.724611).epsilon(1e-5));
    CHECK(sampled.t_star == doctest::Approx(2.331122).epsilon(1e-3));
}

TEST_CASE("monotone power peaks at the last grid point") {
    const auto grid = time_grid(2.0, 0.25);
    const auto peak = max_power(grid, grid);
    CHECK(peak.p_max == 2.0);
    CHECK(peak.t_star == 2.0);
    CHECK_THROWS_AS(max_power(std::vector<double>{0.0}, std::vector<double>{0.0}), std::invalid_argument);
}

TEST_CASE("leading coefficient at L=4") {
    CHECK(perturbative_coefficients(4, 1.0)[0] == doctest::Approx(0.75));
    CHECK(perturbative_coefficients(4, 2.0)[0] == doctest::Approx(0.75 / 4.0));
    CHECK_THROWS_AS(perturbative_coefficients(5, 1.0), std::invalid_argument);
}

TEST_CASE("series coefficients up to t^5 equal the exact Wick moments") {
    for (int l : {4, 6}) {
        const auto c = perturbative_coefficients(l, 1.0);
        for (int n = 1; n <= 3; ++n) {
            const double m = testing::wick_moment(Axis::x, l, n, 1.0 / l);
            const double exact = 0.5 * l * (n % 2 ? 1.0 : -1.0) * m / factorial(2 * n);
            INFO("L=" << l << " n=" << n);
            CHECK(c[n - 1] == doctest::Approx(exact).epsilon(1e-10));
        }
    }
}

TEST_CASE("determinant and Krylov paths agree") {
    const auto j = unit_quench(8, 40);
    const auto times = time_grid(8.0, 0.1);
    for (Axis axis : {Axis::x, Axis::z}) {
        const auto det = battery_return_amplitude(j, axis, times, AutocorrelationPath::free_determinant);
        const auto kry = battery_return_amplitude(j, axis, times, AutocorrelationPath::sector_krylov);
        double err = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) err = std::max(err, std::abs(det[i] - kry[i]));
        CHECK(err < 1e-8);
    }
}

TEST_CASE("return amplitude and power against dense evolution") {
    const auto j = unit_quench(8, 41);
    const auto times = time_grid(6.0, 0.2);
    for (Axis axis : {Axis::x, Axis::z}) {
        const auto phi = battery_return_amplitude(j, axis, times);
        const auto dense = dense_return_amplitude(j, axis, times);
        double err = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) err = std::max(err, std::abs(phi[i] - dense[i]));
        CHECK(err < 1e-10);
        CHECK(charging_power(j, axis, times).energy[0] == 0.0);
    }
    // the z-battery bridge holds realization by realization
    const auto ps = charging_power(j, Axis::z, times);
    const auto direct = dense_evolution_power(j, Axis::z, times);
    double err = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) err = std::max(err, std::abs(ps.energy[i] - direct.energy[i]));
    CHECK(err < 1e-10);
}

TEST_CASE("charging needs a unit-bandwidth quench") {
    const auto j = testing::random_couplings(make_complete(6), 42).scaled(3.0);
    CHECK_THROWS_AS(charging_power(j, Axis::x, time_grid(1.0, 0.1)), std::invalid_argument);
}

TEST_CASE("linear fits") {
    const std::vector<double> x{1, 2, 3, 4};
    const auto f = linear_fit(x, {3, 5, 7, 9});
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.slope_stderr < 1e-12);

    const auto w = linear_fit(x, {3.1, 4.9, 7.2, 8.8}, {0.1, 0.1, 0.1, 0.1});
    CHECK(w.slope == doctest::Approx(1.94));
    CHECK(w.slope_stderr > 0.0);
    CHECK_THROWS_AS(linear_fit({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(linear_fit({1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);

    const auto bw = bandwidth_fit({{4, 1.1}, {8, 2.1}, {12, 3.1}});
    CHECK(bw.slope == doctest::Approx(0.25));
    CHECK(bw.intercept == doctest::Approx(0.1));
}
