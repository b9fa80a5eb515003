#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "boolconc/volume_law.hpp"

using namespace boolconc;

// Reference values: tests/oracles/reference_values.py (mpmath, 50 digits).

namespace {
bool close_rel(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

const double kInf = std::numeric_limits<double>::infinity();

double gamma_density_h_tilde(double alpha, double beta, double s) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double v) {
        if (!(v > 0.0) || !std::isfinite(v)) return 0.0;
        const double log_density = alpha * std::log(beta) + (alpha - 1.0) * std::log(v) - beta * v -
                                   boost::math::lgamma(alpha);
        return v * (std::exp(log_density + s * v) - std::exp(log_density));
    };
    return integrator.integrate(f, 0.0, kInf, 1e-13);
}

double levy_density_h_tilde(double alpha, double beta, double s) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double v) {
        if (!(v > 0.0) || !std::isfinite(v)) return 0.0;
        return alpha * (std::exp((s - beta) * v) - std::exp(-beta * v));
    };
    return integrator.integrate(f, 0.0, kInf, 1e-13);
}
}  // namespace

TEST_CASE("h_tilde at the documented points") {
    CHECK(close_rel(h_tilde(GammaLevyLaw{1.0, 1.0}, 0.5), 1.0, 1e-14));
    CHECK(close_rel(h_tilde(GammaLaw{1.0, 1.0}, 0.5), 3.0, 1e-14));
    CHECK(close_rel(h_tilde(ExponentialLaw{1.0}, 0.5), 3.0, 1e-14));
    CHECK(h_tilde(PointMassLaw{2.0}, 0.0) == 0.0);
    CHECK(close_rel(h_tilde(GammaLaw{2.0, 1.5}, 0.7), 7.4557291666666666667, 1e-13));
    CHECK(close_rel(h_tilde(GammaLevyLaw{2.0, 1.5}, 0.7), 1.1666666666666666667, 1e-13));
}

TEST_CASE("h_tilde is infinite at and beyond s0") {
    CHECK(h_tilde(GammaLaw{2.0, 1.5}, 1.5) == kInf);
    CHECK(h_tilde(GammaLevyLaw{2.0, 1.5}, 3.0) == kInf);
    CHECK(h_tilde(ExponentialLaw{0.5}, 0.5) == kInf);
    CHECK(std::isfinite(h_tilde(PointMassLaw{2.0}, 3.0)));
}

TEST_CASE("closed forms agree with quadrature against the densities") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        for (double beta : {0.5, 1.0, 2.0}) {
            for (double frac : {0.1, 0.4, 0.7}) {
                const double s = frac * beta;
                CHECK(close_rel(h_tilde(GammaLaw{alpha, beta}, s), gamma_density_h_tilde(alpha, beta, s), 1e-8));
                CHECK(close_rel(h_tilde(GammaLevyLaw{alpha, beta}, s), levy_density_h_tilde(alpha, beta, s), 1e-8));
            }
        }
    }
}

TEST_CASE("h_tilde_inverse at the documented points") {
    CHECK(h_tilde_inverse(GammaLevyLaw{1.0, 1.0}, 0.0) == 0.0);
    CHECK(close_rel(h_tilde_inverse(GammaLevyLaw{1.0, 1.0}, 1.0), 0.5, 1e-14));
    CHECK(close_rel(h_tilde_inverse(GammaLaw{1.0, 1.0}, 3.0), 0.5, 1e-14));
    CHECK(close_rel(h_tilde_inverse(ExponentialLaw{1.0}, 3.0), 0.5, 1e-14));
}

TEST_CASE("h_tilde_inverse inverts h_tilde for every law") {
    const std::vector<GrainVolumeLaw> laws = {
        PointMassLaw{2.0},
        GammaLaw{2.0, 1.5},
        GammaLaw{0.5, 0.3},
        GammaLevyLaw{0.7, 2.0},
        ExponentialLaw{0.13},
        EmpiricalLaw{DiscreteMeasure(std::vector<Atom>{{0.3, 1.0}, {2.0, 0.5}})},
    };
    for (const GrainVolumeLaw& law : laws) {
        for (double u : {1e-8, 1e-3, 0.5, 1.0, 10.0, 1e4}) {
            const double s = h_tilde_inverse(law, u);
            INFO(law.name(), " u=", u);
            CHECK(std::abs(h_tilde(law, s) - u) <= 1e-9 * std::max(1.0, u));
        }
    }
}

TEST_CASE("moments, thresholds and support") {
    const GrainVolumeLaw gamma = GammaLaw{2.0, 4.0};
    CHECK(gamma.first_moment() == doctest::Approx(0.5));
    CHECK(gamma.second_moment() == doctest::Approx(6.0 / 16.0));
    CHECK(gamma.s_zero().value() == 4.0);
    CHECK(gamma.essential_max() == kInf);
    CHECK(gamma.total_mass_finite());

    const GrainVolumeLaw levy = GammaLevyLaw{1.0, 2.0};
    CHECK_FALSE(levy.total_mass_finite());
    CHECK(levy.second_moment() == doctest::Approx(0.25));

    const GrainVolumeLaw point = PointMassLaw{3.0};
    CHECK(point.is_deterministic());
    CHECK(point.essential_max() == 3.0);
    CHECK(point.s_zero().is_infinite());

    const GrainVolumeLaw emp = EmpiricalLaw{DiscreteMeasure(std::vector<Atom>{{0.5, 2.0}, {1.5, 1.0}})};
    CHECK_FALSE(emp.is_deterministic());
    CHECK(emp.first_moment() == doctest::Approx(2.5));
    CHECK(emp.second_moment() == doctest::Approx(2.75));
    CHECK(emp.essential_max() == 1.5);
    CHECK(GrainVolumeLaw(EmpiricalLaw{DiscreteMeasure(std::vector<Atom>{{0.5, 2.0}})}).is_deterministic());

    CHECK(GrainVolumeLaw(ExponentialLaw{2.0}).name() == "exponential");
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(GrainVolumeLaw(GammaLaw{0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GrainVolumeLaw(GammaLevyLaw{1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GrainVolumeLaw(PointMassLaw{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(GrainVolumeLaw(EmpiricalLaw{DiscreteMeasure()}), std::invalid_argument);
    CHECK_THROWS_AS((void)h_tilde(PointMassLaw{1.0}, -0.5), std::invalid_argument);
}
