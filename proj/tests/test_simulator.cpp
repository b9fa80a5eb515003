#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "boolconc/simulator.hpp"
#include "boolconc/stats.hpp"

using namespace boolconc;

namespace {
Window box(std::vector<double> lo, std::vector<double> hi) { return Window(lo, hi); }

Grain ball(Vec3 center, double radius) {
    Grain g;
    g.center = center;
    g.radius = radius;
    return g;
}

Realization intervals(std::vector<std::pair<double, double>> spans) {
    Realization r{1, {}};
    for (auto [a, b] : spans) r.grains.push_back(ball({0.5 * (a + b), 0.0, 0.0}, 0.5 * (b - a)));
    return r;
}

const BooleanModelSpec kReference{1, 1.0, FixedInterval{1.0}};
}  // namespace

TEST_CASE("germ count of the reference model has mean 11") {
    const Window w = box({0.0}, {10.0});
    const int n = 100000;
    std::vector<double> counts(n);
    for (int i = 0; i < n; ++i) counts[i] = static_cast<double>(sample_realization(kReference, w, i).grains.size());
    const MeanEstimate m = mean_and_se(counts);
    CHECK(std::abs(m.mean - 11.0) < 3.0 * m.standard_error);
}

TEST_CASE("realizations are deterministic per seed") {
    const Window w = box({0.0, 0.0}, {5.0, 5.0});
    const BooleanModelSpec spec{2, 0.5, RandomBall{GammaRadius{2.0, 3.0}}};
    std::ostringstream a;
    std::ostringstream b;
    write_realization_csv(a, sample_realization(spec, w, 42));
    write_realization_csv(b, sample_realization(spec, w, 42));
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("x1,x2,param\n", 0) == 0);
    std::ostringstream c;
    write_realization_csv(c, sample_realization(spec, w, 43));
    CHECK(a.str() != c.str());
}

TEST_CASE("a vanishing intensity gives empty realizations") {
    const BooleanModelSpec spec{1, 1e-12, FixedInterval{1.0}};
    int empty = 0;
    for (int i = 0; i < 100; ++i) empty += sample_realization(spec, box({0.0}, {10.0}), i).grains.empty() ? 1 : 0;
    CHECK(empty == 100);
}

TEST_CASE("truncated radii never exceed the support bound") {
    const BooleanModelSpec spec{2, 1.0, RandomBall{ExponentialRadius{1.0}}};
    const double r_max = spec.support_half_extent()[0];
    for (int i = 0; i < 50; ++i)
        for (const Grain& g : sample_realization(spec, box({0.0, 0.0}, {5.0, 5.0}), i).grains) CHECK(g.radius <= r_max);
}

TEST_CASE("exact union and exactly-once lengths in one dimension") {
    const Window w = box({0.0}, {3.0});
    const Realization r = intervals({{0.0, 1.0}, {0.5, 2.0}});
    const VolumeEstimate f = measure_volume(r, w, VolumeMethod::exact_1d());
    CHECK(f.value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f.standard_error == 0.0);
    CHECK(exactly_once_volume(r, w, VolumeMethod::exact_1d()).value == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(measure_volume(Realization{1, {}}, w, VolumeMethod::exact_1d()).value == 0.0);

    const Realization twice = intervals({{0.5, 1.5}, {0.5, 1.5}});
    CHECK(exactly_once_volume(twice, w, VolumeMethod::exact_1d()).value == 0.0);
    const Realization single = intervals({{-0.5, 0.7}});
    CHECK(exactly_once_volume(single, w, VolumeMethod::exact_1d()).value == doctest::Approx(0.7));
}

TEST_CASE("grid estimate of a single disc") {
    const Window w = box({0.0, 0.0}, {10.0, 10.0});
    const Realization r{2, {ball({5.0, 5.0, 0.0}, 1.0)}};
    const VolumeEstimate f = measure_volume(r, w, VolumeMethod::grid(1000000), 7);
    CHECK(f.se_quantified);
    CHECK(f.standard_error > 0.0);
    CHECK(std::abs(f.value - std::numbers::pi) < 3.0 * f.standard_error);
    const VolumeEstimate q = measure_volume(r, w, VolumeMethod::quasi_mc(1 << 16));
    CHECK_FALSE(q.se_quantified);
    CHECK(std::abs(q.value - std::numbers::pi) < 0.02);
    CHECK(exactly_once_volume(r, w, VolumeMethod::quasi_mc(1 << 16)).value == q.value);
}

TEST_CASE("exact one-dimensional union agrees with the grid method") {
    const Window w = box({0.0}, {10.0});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Realization r = sample_realization(kReference, w, seed);
        const double exact = measure_volume(r, w, VolumeMethod::exact_1d()).value;
        const VolumeEstimate grid = measure_volume(r, w, VolumeMethod::grid(200000), seed);
        CHECK(std::abs(exact - grid.value) <= 3.0 * grid.standard_error + 1e-12);
    }
}

TEST_CASE("exactly-once volume never exceeds the union") {
    const Window w = box({0.0, 0.0}, {6.0, 6.0});
    const BooleanModelSpec spec{2, 0.4, RandomBall{UniformRadius{0.2, 1.0}}};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Realization r = sample_realization(spec, w, seed);
        CHECK(exactly_once_volume(r, w, VolumeMethod::quasi_mc(4096)).value <=
              measure_volume(r, w, VolumeMethod::quasi_mc(4096)).value);
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Realization r = sample_realization(kReference, box({0.0}, {10.0}), seed);
        CHECK(exactly_once_volume(r, box({0.0}, {10.0}), VolumeMethod::exact_1d()).value <=
              measure_volume(r, box({0.0}, {10.0}), VolumeMethod::exact_1d()).value);
    }
}

TEST_CASE("method and dimension mismatches are rejected") {
    const Realization r{2, {ball({1.0, 1.0, 0.0}, 1.0)}};
    const Window w = box({0.0, 0.0}, {2.0, 2.0});
    CHECK_THROWS_AS((void)measure_volume(r, w, VolumeMethod::exact_1d()), std::invalid_argument);
    CHECK_THROWS_AS((void)measure_volume(r, w, VolumeMethod::grid(0)), std::invalid_argument);
    CHECK_THROWS_AS((void)measure_volume(r, box({0.0}, {2.0}), VolumeMethod::grid(10)), std::invalid_argument);
}

TEST_CASE("tail estimate of the reference model") {
    const Window w = box({0.0}, {10.0});
    const std::vector<double> grid = {0.5, 1.0, 2.0, 11.0};
    SimulationOptions options;
    options.n_reps = 4000;
    const TailEstimate est = estimate_tail(kReference, w, grid, options, 11);
    const double mean = (1.0 - std::exp(-1.0)) * 10.0;
    CHECK(est.mean_F_analytic == doctest::Approx(mean));
    CHECK(est.mean_F_used == est.mean_F_analytic);
    CHECK(std::abs(est.mean_F_hat - mean) < 3.0 * est.se_mean);
    CHECK(est.samples.size() == 4000);
    CHECK(est.tail.back() == 0.0);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(est.ci_low[k] <= est.tail[k]);
        CHECK(est.tail[k] <= est.ci_high[k]);
        if (k > 0) CHECK(est.tail[k] <= est.tail[k - 1]);
    }

    const TailEstimate again = estimate_tail(kReference, w, grid, options, 11);
    CHECK(again.samples == est.samples);
    SimulationOptions serial = options;
    serial.threads = 1;
    CHECK(estimate_tail(kReference, w, grid, serial, 11).samples == est.samples);

    const TailEstimate wide = with_ci_level(est, 0.999);
    CHECK(wide.tail == est.tail);
    CHECK(wide.ci_level == 0.999);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) CHECK(wide.ci_low[k] <= est.ci_low[k]);

    std::ostringstream out;
    write_csv(out, est);
    CHECK(out.str().rfind("r,tail,ci_low,ci_high\n", 0) == 0);
}

TEST_CASE("tail estimation preconditions") {
    const Window w = box({0.0}, {10.0});
    SimulationOptions options;
    options.n_reps = 50;
    CHECK_THROWS_AS((void)estimate_tail(kReference, w, std::vector<double>{1.0}, options, 0), std::invalid_argument);
    options.n_reps = 100;
    CHECK_THROWS_AS((void)estimate_tail(kReference, w, std::vector<double>{0.0, 1.0}, options, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)estimate_tail(kReference, w, std::vector<double>{2.0, 1.0}, options, 0),
                    std::invalid_argument);
}

TEST_CASE("a saturated model has no upper deviations") {
    const Window w = box({0.0}, {10.0});
    const BooleanModelSpec dense{1, 50.0, FixedInterval{1.0}};
    SimulationOptions options;
    options.n_reps = 100;
    const TailEstimate est = estimate_tail(dense, w, std::vector<double>{1e-6, 0.1}, options, 3);
    CHECK(est.tail[0] == 0.0);
    CHECK(est.mean_F_hat == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("F is invariant in law under translating the window") {
    const BooleanModelSpec spec{2, 1.0 / std::numbers::pi, FixedBall{1.0}};
    SimulationOptions options;
    options.n_reps = 400;
    options.method = VolumeMethod::quasi_mc(2048);
    const std::vector<double> grid = {1.0};
    const TailEstimate a = estimate_tail(spec, box({0.0, 0.0}, {4.0, 4.0}), grid, options, 1);
    const TailEstimate b = estimate_tail(spec, box({100.0, -37.5}, {104.0, -33.5}), grid, options, 2);
    const double se = std::hypot(a.se_mean, b.se_mean);
    CHECK(std::abs(a.mean_F_hat - b.mean_F_hat) < 4.0 * se);
}

TEST_CASE("volume fraction estimates") {
    const Window w = box({0.0}, {10.0});
    const VolumeFractionEstimate ref = estimate_volume_fraction(kReference, w, 200, 2000, 5);
    CHECK(std::abs(ref.p_hat - (1.0 - std::exp(-1.0))) < 3.0 * ref.standard_error);

    const BooleanModelSpec sparse{1, 1e-9, FixedInterval{1.0}};
    CHECK(estimate_volume_fraction(sparse, w, 200, 100, 5).p_hat == 0.0);

    const BooleanModelSpec heavy{1, 10.0, FixedInterval{1.0}};
    const VolumeFractionEstimate h = estimate_volume_fraction(heavy, w, 200, 2000, 5);
    CHECK(std::abs(h.p_hat - (1.0 - std::exp(-10.0))) < 3.0 * h.standard_error + 1e-4);
}
