#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace boolconc {

/// Adaptive 31-point Gauss-Kronrod over [a, b], evaluated as
/// (b - a) * integral_0^1 f(a + (b - a) t) dt. Boost compares the error
/// estimate of each panel before scaling by its half-width, so short
/// intervals never meet a tight relative tolerance; mapping to [0, 1] keeps
/// the top-level panel at unit length.
template <class F>
double integrate_gk(F&& f, double a, double b, double tol, unsigned max_depth = 20, double* error = nullptr) {
    const double width = b - a;
    const auto g = [&](double t) { return f(a + width * t); };
    double err = 0.0;
    const double unit = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, max_depth, tol, &err);
    if (error) *error = err * width;
    return unit * width;
}

}  // namespace boolconc
