#include "boolconc/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "boolconc/errors.hpp"

namespace boolconc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

SZero::SZero(double value) : value_(value) {
    if (std::isnan(value) || !(value > 0.0))
        throw std::invalid_argument("SZero: exponential-moment threshold must be > 0");
}

ExtendedReal moment(const DiscreteMeasure& m, int i) {
    if (i < 0 || i > 2) throw std::invalid_argument("moment: order must be 0, 1 or 2");
    if (i == 0 && !m.total_mass_finite()) return kInf;
    double sum = 0.0;
    for (const Atom& a : m.atoms()) sum += a.w * std::pow(a.u, i);
    return sum;
}

ExtendedReal cumulant_integral(const DiscreteMeasure& m, double s) {
    if (std::isnan(s) || s < 0.0) throw std::invalid_argument("cumulant_integral: s must be >= 0");
    double sum = 0.0;
    for (const Atom& a : m.atoms()) sum += a.w * phi(s * a.u);
    return sum;
}

ExtendedReal h_value(const DiscreteMeasure& m, double s) {
    if (std::isnan(s) || s < 0.0) throw std::invalid_argument("h_value: s must be >= 0");
    double sum = 0.0;
    for (const Atom& a : m.atoms()) sum += a.w * a.u * std::expm1(s * a.u);
    return sum;
}

ExtendedReal h_derivative(const DiscreteMeasure& m, double s) {
    double sum = 0.0;
    for (const Atom& a : m.atoms()) sum += a.w * a.u * a.u * std::exp(s * a.u);
    return sum;
}

ExtendedReal h_inverse(const DiscreteMeasure& m, double u, double tol, SZero s0) {
    if (std::isnan(u) || u < 0.0) throw std::invalid_argument("h_inverse: u must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("h_inverse: tolerance must be > 0");
    if (u == 0.0) return 0.0;
    if (m.empty()) return kInf;

    const double target_tol = tol * std::max(1.0, u);
    double lo = 0.0;
    double hi = 1.0;
    if (!s0.is_infinite()) {
        hi = s0.value();
        if (h_value(m, hi) < u) return hi;
    } else {
        while (h_value(m, hi) < u) {
            lo = hi;
            hi *= 2.0;
            if (!std::isfinite(hi)) return kInf;
        }
    }

    // Newton from the left is monotone for a convex increasing h, but the
    // derivative can overflow, so every step is clamped to the bracket.
    double s = lo + 0.5 * (hi - lo);
    for (int iter = 0; iter < 400; ++iter) {
        const double hs = h_value(m, s);
        const double diff = hs - u;
        if (std::abs(diff) <= target_tol) return s;
        if (diff < 0.0)
            lo = s;
        else
            hi = s;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return s;
        const double slope = h_derivative(m, s);
        double next = s - diff / slope;
        if (!std::isfinite(next) || next <= lo || next >= hi) next = lo + 0.5 * (hi - lo);
        s = next;
    }
    return s;
}

ExtendedReal h_left_limit(const DiscreteMeasure& m, SZero s0) {
    if (m.empty()) return 0.0;
    if (s0.is_infinite()) return kInf;
    return h_value(m, s0.value());
}

double integral_h_inverse(const DiscreteMeasure& m, double r, SZero s0, double tol) {
    const double limit = h_left_limit(m, s0);
    if (std::isnan(r) || !(r > 0.0) || !(r < limit))
        throw DomainError("integral_h_inverse: r must lie in (0, h(s0-))", limit);
    const double s_star = h_inverse(m, r, tol, s0);
    return s_star * r - cumulant_integral(m, s_star);
}

}  // namespace boolconc
