#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "boolconc/kernels.hpp"
#include "boolconc/nu_star.hpp"
#include "boolconc/transforms.hpp"

using namespace boolconc;

namespace {
Window box(std::vector<double> lo, std::vector<double> hi) { return Window(lo, hi); }

// m_1 of nu* and its Monte Carlo standard error, from the atoms of nu
// (every sample that misses W contributes a zero).
struct FirstMoment {
    double value;
    double se;
};

FirstMoment first_moment(const BooleanModelSpec& spec, const Window& w, std::size_t n, std::uint64_t seed) {
    const DiscreteMeasure nu = nu_stationary(spec, w, n, seed);
    const double total = spec.germ_intensity * w.dilated(spec.support_half_extent()).volume();
    const double per_sample = total / static_cast<double>(n);
    const double mean_u = moment(nu, 1) / per_sample / static_cast<double>(n);
    const double mean_u2 = moment(nu, 2) / per_sample / static_cast<double>(n);
    const double t = tau(spec.simulated_gamma1());
    return {t * total * mean_u, t * total * std::sqrt((mean_u2 - mean_u * mean_u) / static_cast<double>(n))};
}
}  // namespace

TEST_CASE("first moment of nu* matches the mean of F in one dimension") {
    const BooleanModelSpec spec{1, 1.0, FixedInterval{1.0}};
    const Window w = box({0.0}, {10.0});
    const FirstMoment m = first_moment(spec, w, 200000, 1);
    const double target = (1.0 - std::exp(-1.0)) * 10.0;
    CHECK(std::abs(m.value - target) < 3.0 * m.se);
    const DiscreteMeasure nu_star = nu_star_stationary(spec, w, 200000, 1);
    CHECK(std::abs(moment(nu_star, 1) - m.value) < 1e-9 * m.value);
}

TEST_CASE("first moment of nu* matches the mean of F for discs") {
    const BooleanModelSpec spec{2, 1.0 / std::numbers::pi, FixedBall{1.0}};
    const Window w = box({0.0, 0.0}, {10.0, 10.0});
    const FirstMoment m = first_moment(spec, w, 100000, 2);
    CHECK(std::abs(m.value - (1.0 - std::exp(-1.0)) * 100.0) < 3.0 * m.se);
}

TEST_CASE("atoms never exceed the grain volume") {
    const BooleanModelSpec spec{1, 1.0, FixedInterval{1.0}};
    const DiscreteMeasure nu_star = nu_star_stationary(spec, box({0.0}, {10.0}), 20000, 3);
    CHECK_FALSE(nu_star.empty());
    CHECK(nu_star.max_location() <= 1.0);
    CHECK(nu_star.atoms().back().u == 1.0);
}

TEST_CASE("nu* is dominated by nu atom by atom") {
    const BooleanModelSpec spec{2, 0.3, RandomBall{UniformRadius{0.5, 1.5}}};
    const Window w = box({0.0, 0.0}, {5.0, 5.0});
    const DiscreteMeasure nu = nu_stationary(spec, w, 5000, 4);
    const DiscreteMeasure nu_star = nu_star_stationary(spec, w, 5000, 4);
    REQUIRE(nu.size() == nu_star.size());
    for (std::size_t k = 0; k < nu.size(); ++k) {
        CHECK(nu_star.atoms()[k].u == nu.atoms()[k].u);
        CHECK(nu_star.atoms()[k].w <= nu.atoms()[k].w);
    }
}

TEST_CASE("discretization is reproducible and empty without grains") {
    const BooleanModelSpec spec{1, 1.0, FixedInterval{1.0}};
    const Window w = box({0.0}, {10.0});
    CHECK(nu_star_stationary(spec, w, 1000, 9) == nu_star_stationary(spec, w, 1000, 9));
    const BooleanModelSpec none{1, 0.0, FixedInterval{1.0}};
    CHECK(nu_star_stationary(none, w, 1000, 9).empty());
}
