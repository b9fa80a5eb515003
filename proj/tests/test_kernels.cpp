#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "boolconc/kernels.hpp"

using namespace boolconc;

// Reference values: tests/oracles/reference_values.py (mpmath, 50 digits).

namespace {
bool close_rel(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }
}  // namespace

TEST_CASE("phi matches high-precision values across its range") {
    CHECK(phi(0.0) == 0.0);
    CHECK(close_rel(phi(1.0), 0.71828182845904523536, 1e-14));
    CHECK(close_rel(phi(1e-5), 5.0000166667083334167e-11, 1e-13));
    CHECK(close_rel(phi(1e-9), 5.0000000016666666671e-19, 1e-13));
    CHECK(close_rel(phi(2.0), 4.3890560989306502272, 1e-14));
    CHECK(close_rel(phi(30.0), 10686474581493.462147, 1e-14));
}

TEST_CASE("phi is midpoint convex on a log grid") {
    std::vector<double> grid;
    for (double z = 1e-8; z <= 50.0; z *= 1.7) grid.push_back(z);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            const double lhs = phi(0.5 * (grid[i] + grid[j]));
            const double rhs = 0.5 * (phi(grid[i]) + phi(grid[j]));
            CHECK(lhs <= rhs * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("phi(s u) <= u phi(s) for u in [0, 1]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> s_dist(1e-6, 50.0);
    for (int k = 0; k < 2000; ++k) {
        const double u = unit(rng);
        const double s = s_dist(rng);
        CHECK(phi(s * u) <= u * phi(s) * (1.0 + 1e-12));
    }
}

TEST_CASE("psi: infinite at zero, negative and decreasing afterwards") {
    CHECK(std::isinf(psi(0.0)));
    CHECK(psi(0.0) > 0.0);
    CHECK(close_rel(psi(1.0), -0.38629436111989061883, 1e-14));
    CHECK(close_rel(psi(std::exp(1.0) - 1.0), -0.58197670686932642439, 1e-14));
    CHECK(close_rel(psi(1e-3), -0.00049983341661669997621, 1e-12));
    CHECK(close_rel(psi(0.05), -0.024593447558072064373, 1e-13));
    CHECK(close_rel(psi(10.0), -1.6376848000782075985, 1e-14));
    CHECK(close_rel(psi(1e6), -12.815525373475332068, 1e-13));
    double prev = 0.0;
    for (double z = 1e-4; z < 50.0; z *= 1.3) {
        const double v = psi(z);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("psi is continuous across the series switch") {
    const double below = psi(0.1 * (1.0 - 1e-12));
    const double above = psi(0.1 * (1.0 + 1e-12));
    CHECK(std::abs(below - above) < 1e-13);
}

TEST_CASE("tau limits and values") {
    CHECK(tau(0.0) == 1.0);
    CHECK(tau(std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(close_rel(tau(1.0), 0.6321205588285576784, 1e-14));
    CHECK(close_rel(tau(1e-8), 0.99999999500000001667, 1e-15));
    CHECK(close_rel(tau(50.0), 0.02, 1e-14));
}

TEST_CASE("tau is a decreasing map into [0, 1] with z tau(z) = 1 - e^{-z}") {
    double prev = 1.0;
    for (double z = 1e-9; z < 700.0; z *= 1.5) {
        const double t = tau(z);
        CHECK(t <= 1.0);
        CHECK(t > 0.0);
        CHECK(t < prev);
        CHECK(close_rel(z * t, -std::expm1(-z), 1e-12));
        prev = t;
    }
}

TEST_CASE("x_minus_log1p is accurate for small and large arguments") {
    CHECK(close_rel(x_minus_log1p(1e-3), 4.996669164668331906e-7, 1e-13));
    CHECK(close_rel(x_minus_log1p(5.0), 3.2082405307719449992, 1e-14));
    CHECK(close_rel(x_minus_log1p(-0.5), 0.19314718055994530942, 1e-14));
}

TEST_CASE("kernels reject negative arguments") {
    CHECK_THROWS_AS(phi(-0.5), std::invalid_argument);
    CHECK_THROWS_AS(psi(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(tau(-1.0), std::invalid_argument);
}
