#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include "boolconc/model.hpp"

using namespace boolconc;

// Reference values: tests/oracles/reference_values.py (mpmath, 50 digits).

namespace {
bool close_rel(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

Window box(std::vector<double> lo, std::vector<double> hi) { return Window(lo, hi); }

Grain ball(Vec3 center, double radius) {
    Grain g;
    g.shape = Grain::Shape::kBall;
    g.center = center;
    g.radius = radius;
    return g;
}
}  // namespace

TEST_CASE("windows") {
    const Window w = box({0.0, 1.0}, {2.0, 4.0});
    CHECK(w.dimension() == 2);
    CHECK(w.volume() == 6.0);
    CHECK(w.side(1) == 3.0);
    const Window d = w.dilated({0.5, 1.0, 0.0});
    CHECK(d.volume() == doctest::Approx(3.0 * 5.0));
    CHECK(w.translated({1.0, 1.0, 0.0}).lower()[0] == 1.0);
    CHECK_THROWS_AS(box({0.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(box({0.0, 0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(box({}, {}), std::invalid_argument);
}

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(1) == 2.0);
    CHECK(close_rel(unit_ball_volume(2), std::numbers::pi, 1e-15));
    CHECK(close_rel(unit_ball_volume(3), 4.0 * std::numbers::pi / 3.0, 1e-15));
    CHECK_THROWS_AS((void)unit_ball_volume(4), std::invalid_argument);
}

TEST_CASE("disc-rectangle intersection areas") {
    CHECK(close_rel(disc_rectangle_area(0.3, -0.2, 1.0, 0.0, 2.0, 0.0, 1.0), 0.82217682051119639132, 1e-12));
    CHECK(close_rel(disc_rectangle_area(1.1, 0.9, 0.7, 0.0, 1.0, 0.0, 1.0), 0.37484510006474967171, 1e-12));
    CHECK(close_rel(disc_rectangle_area(5.0, 5.0, 1.0, 0.0, 10.0, 0.0, 10.0), std::numbers::pi, 1e-14));
    CHECK(close_rel(disc_rectangle_area(0.0, 0.0, 1.0, 0.0, 10.0, 0.0, 10.0), std::numbers::pi / 4.0, 1e-14));
    CHECK(disc_rectangle_area(5.0, 5.0, 1.0, 0.0, 1.0, 0.0, 1.0) == 0.0);
    CHECK(close_rel(disc_rectangle_area(0.5, 0.5, 10.0, 0.0, 1.0, 0.0, 1.0), 1.0, 1e-14));
}

TEST_CASE("disc-rectangle area agrees with a fine point count") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> pos(-1.0, 3.0);
    for (int k = 0; k < 20; ++k) {
        const double cx = pos(rng);
        const double cy = pos(rng);
        const double area = disc_rectangle_area(cx, cy, 1.0, 0.0, 2.0, 0.0, 1.5);
        const int n = 1000;
        int hits = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double x = 2.0 * (i + 0.5) / n;
                const double y = 1.5 * (j + 0.5) / n;
                if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= 1.0) ++hits;
            }
        }
        CHECK(std::abs(area - 3.0 * hits / (double(n) * n)) < 5e-3);
    }
}

TEST_CASE("clipped volumes of grains") {
    const Window line = box({0.0}, {3.0});
    Grain interval = ball({-0.25, 0.0, 0.0}, 0.5);
    CHECK(interval.clipped_volume(line) == doctest::Approx(0.25));
    CHECK(interval.volume(1) == 1.0);

    Grain square;
    square.shape = Grain::Shape::kBox;
    square.center = {0.0, 0.0, 0.0};
    square.half_sides = {1.0, 0.5, 0.0};
    CHECK(square.volume(2) == 2.0);
    CHECK(square.clipped_volume(box({0.0, 0.0}, {5.0, 5.0})) == doctest::Approx(0.5));
    CHECK(square.contains({0.9, -0.4, 0.0}, 2));
    CHECK_FALSE(square.contains({1.1, 0.0, 0.0}, 2));

    const Grain sphere = ball({0.2, 0.5, 0.9}, 0.8);
    CHECK(close_rel(sphere.clipped_volume(box({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0})), 0.67845859779806519535, 1e-9));
    const Grain inside = ball({5.0, 5.0, 5.0}, 1.0);
    CHECK(close_rel(inside.clipped_volume(box({0.0, 0.0, 0.0}, {10.0, 10.0, 10.0})), 4.0 * std::numbers::pi / 3.0,
                    1e-10));
}

TEST_CASE("model validation") {
    BooleanModelSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.dimension = 2;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.grain = FixedBox{{1.0}};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.grain = FixedBall{1.0};
    spec.germ_intensity = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.germ_intensity = 1.0;
    spec.grain = RandomBall{ExponentialRadius{1.0}, 0.99};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.grain = RandomBall{UniformRadius{2.0, 1.0}};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("gamma moments of the models") {
    BooleanModelSpec disc{2, 1.0 / std::numbers::pi, FixedBall{1.0}};
    CHECK(close_rel(disc.gamma1(), 1.0, 1e-15));
    CHECK(close_rel(disc.gamma2(), std::numbers::pi, 1e-15));
    CHECK(disc.exact());
    CHECK(disc.support_half_extent()[0] == 1.0);
    CHECK(disc.support_half_extent()[2] == 0.0);

    BooleanModelSpec line;
    CHECK(line.gamma1() == 1.0);
    CHECK(line.volume_law() == GrainVolumeLaw(PointMassLaw{1.0}));

    BooleanModelSpec dense{1, 2.0, FixedInterval{0.5}};
    const GrainVolumeLaw law = dense.volume_law();
    CHECK(law.is_deterministic());
    CHECK(law.first_moment() == doctest::Approx(dense.gamma1()));

    BooleanModelSpec random_1d{1, 1.0, RandomBall{ExponentialRadius{2.0}}};
    CHECK(random_1d.volume_law() == GrainVolumeLaw(ExponentialLaw{1.0}));
    CHECK(random_1d.gamma1() == doctest::Approx(1.0));
    CHECK(random_1d.gamma2() == doctest::Approx(2.0));
    CHECK_FALSE(random_1d.exact());
    CHECK(random_1d.simulated_gamma1() < random_1d.gamma1());
    CHECK(random_1d.simulated_gamma1() > random_1d.gamma1() * (1.0 - 1e-4));

    BooleanModelSpec random_2d{2, 0.5, RandomBall{UniformRadius{0.5, 1.5}}};
    const double er2 = (std::pow(1.5, 3) - std::pow(0.5, 3)) / 3.0;
    CHECK(close_rel(random_2d.gamma1(), 0.5 * std::numbers::pi * er2, 1e-12));
    CHECK(random_2d.simulated_gamma1() == random_2d.gamma1());
    const GrainVolumeLaw discrete = random_2d.volume_law();
    REQUIRE(std::holds_alternative<EmpiricalLaw>(discrete.variant()));
    CHECK(close_rel(discrete.first_moment(), random_2d.gamma1(), 1e-4));
    CHECK(discrete.essential_max() <= std::numbers::pi * 1.5 * 1.5);
}

TEST_CASE("radius laws") {
    const RadiusLaw exp_law = ExponentialRadius{2.0};
    CHECK(radius_moment(exp_law, 1) == doctest::Approx(0.5));
    CHECK(radius_moment(exp_law, 2) == doctest::Approx(0.5));
    CHECK(radius_quantile(exp_law, 0.5) == doctest::Approx(std::log(2.0) / 2.0));
    CHECK(radius_partial_moment(exp_law, 1, 1e9) == doctest::Approx(0.5));
    const RadiusLaw gamma_law = GammaRadius{3.0, 2.0};
    CHECK(radius_moment(gamma_law, 2) == doctest::Approx(3.0));
    const RadiusLaw uniform = UniformRadius{1.0, 3.0};
    CHECK(radius_moment(uniform, 1) == doctest::Approx(2.0));
    CHECK(radius_quantile(uniform, 0.25) == doctest::Approx(1.5));
    CHECK(radius_partial_moment(uniform, 1, 2.0) == doctest::Approx(0.75));
    CHECK(radius_law_bounded(uniform));
    CHECK_FALSE(radius_law_bounded(gamma_law));
}
