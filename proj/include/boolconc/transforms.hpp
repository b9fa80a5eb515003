#pragma once

#include <limits>

#include "boolconc/discrete_measure.hpp"
#include "boolconc/kernels.hpp"

namespace boolconc {

inline constexpr double kDefaultRootTolerance = 1e-10;

/// Exponential-moment threshold of a jump measure: the supremum of the s for
/// which the exponential moments stay finite. Always > 0, may be +inf.
class SZero {
public:
    constexpr SZero() = default;
    explicit SZero(double value);

    static constexpr SZero infinite() { return SZero(); }

    double value() const noexcept { return value_; }
    bool is_infinite() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }

    friend bool operator==(const SZero&, const SZero&) = default;

private:
    double value_ = std::numeric_limits<double>::infinity();
};

/// sum w u^i for i in {0,1,2}; +inf for i = 0 on a measure flagged with
/// infinite total mass.
ExtendedReal moment(const DiscreteMeasure& m, int i);

/// Log-moment-generating integral K(s) = sum w phi(s u). K'(s) = h(s).
ExtendedReal cumulant_integral(const DiscreteMeasure& m, double s);

/// h(s) = sum w u (e^{su} - 1). Overflows to +inf rather than throwing.
ExtendedReal h_value(const DiscreteMeasure& m, double s);

/// h'(s) = sum w u^2 e^{su}.
ExtendedReal h_derivative(const DiscreteMeasure& m, double s);

/// Generalized inverse inf{s >= 0 : h(s) >= u}, by bracketing plus
/// safeguarded Newton. The result satisfies |h(s) - u| <= tol * max(1, u)
/// unless the bracket collapses to machine precision first. Returns +inf for
/// the zero measure and u > 0, and the cap s0 when h(s0) < u.
ExtendedReal h_inverse(const DiscreteMeasure& m, double u,
                       double tol = kDefaultRootTolerance,
                       SZero s0 = SZero::infinite());

/// h(s0-), the right end of the inverse-integral bound's validity range.
ExtendedReal h_left_limit(const DiscreteMeasure& m, SZero s0);

/// integral_0^r h^{-1}(v) dv, evaluated through the Legendre identity
/// s* r - K(s*) with s* = h^{-1}(r). Throws DomainError (carrying h(s0-))
/// unless 0 < r < h(s0-).
double integral_h_inverse(const DiscreteMeasure& m, double r,
                          SZero s0 = SZero::infinite(),
                          double tol = kDefaultRootTolerance);

}  // namespace boolconc
