#pragma once

// Upper-tail concentration bounds P(F - E[F] >= r) <= bound(r) for the
// measure F of a Boolean model, plus the generic Chernoff optimizer behind
// them. Every bound has a `log_` form returning the exponent; the plain form
// exponentiates once.

#include <cmath>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "boolconc/discrete_measure.hpp"
#include "boolconc/transforms.hpp"
#include "boolconc/volume_law.hpp"

namespace boolconc {

/// Which bound produced a curve. The wire codes (bound_code) are the
/// identifiers used in configs and CSV files.
enum class BoundId {
    kNuStarChernoff,        ///< "T3_5": Chernoff optimum over s of K(s) - s r
    kInverseIntegral,       ///< "T3_7": exp(-integral_0^r h^{-1})
    kBoundedMass,           ///< "C3_8_i0": bounded jumps, total mass m0
    kBoundedFirstMoment,    ///< "C3_8_i1": bounded jumps, first moment m1
    kBoundedSecondMoment,   ///< "C3_8_i2": bounded jumps, second moment m2
    kVolumeMean,            ///< "C4_2_a": stationary volume, mean form
    kVolumeSecondMoment,    ///< "C4_2_b": stationary volume, gamma_2 form
    kFixedGrain,            ///< "R4_3": deterministic grain
    kWindowBound,           ///< "E4_12": mean form with a = |W|
    kVolumeLawInverse,      ///< "C4_4": exp(-integral h~^{-1}(c u) du)
    kGammaLevyClosedForm,   ///< "EX4_5"
    kGammaClosedForm,       ///< "EX4_6"
    kMeckeVolume,           ///< "P4_8": exactly-once coverage / Mecke route
    kMeckeGeneral,          ///< "T2_4": generic (a, b) Mecke bound
};

std::string_view bound_code(BoundId id);
/// Throws std::invalid_argument for unknown codes.
BoundId parse_bound_code(std::string_view code);
std::span<const BoundId> all_bound_ids();

// ---------------------------------------------------------------------------
// Chernoff optimizer

struct ChernoffResult {
    double s_star = 0.0;
    double log_bound = 0.0;  ///< inf_s (K(s) - s r), never positive
};

/// Minimizes g(s) = K(s) - s r over (0, s0) for a convex K with K(0+) = 0.
/// Golden-section search on an expanding bracket, then (if `derivative` is
/// given) bisection on K'(s) = r to polish s*. Non-finite K values are treated
/// as +inf, i.e. infeasible.
ChernoffResult chernoff_optimize(const std::function<double(double)>& cumulant, SZero s0, double r,
                                 double tol = kDefaultRootTolerance,
                                 const std::function<double(double)>& derivative = {});

// ---------------------------------------------------------------------------
// Bounds driven by a jump measure nu*

/// inf_{0<s<s0} (sum w phi(s u) - s r). DomainError for the zero measure.
double log_nu_star_chernoff_bound(const DiscreteMeasure& nu_star, SZero s0, double r);
/// -integral_0^r h^{-1}. DomainError (carrying h(s0-)) outside (0, h(s0-)).
double log_inverse_integral_bound(const DiscreteMeasure& nu_star, SZero s0, double r);
/// (r/a) psi(a^{i-1} r / m_i) for jumps bounded by a. DomainError unless
/// 0 < m_i < inf; std::invalid_argument if an atom exceeds a.
double log_bounded_moment_bound(const DiscreteMeasure& nu_star, double a, int i, double r);

struct BoundParameters {
    DiscreteMeasure nu_star;
    SZero s0;
};

/// Parameters for a Lipschitz transform T(F) with constant c_T: the jump
/// measure is pushed forward by u -> c_T u and s0 becomes s0 / c_T, so that
/// the nu*-Chernoff bound of the result is the bound for T(F).
BoundParameters lipschitz_scale(const BoundParameters& base, double c_T);

// ---------------------------------------------------------------------------
// Stationary Boolean model in R^d, F = volume(Z ∩ W)

struct StationaryModelSummary {
    double gamma1 = 0.0;       ///< integral of grain volume against Q
    ExtendedReal gamma2 = 0.0; ///< integral of squared grain volume
    double p = 0.0;            ///< volume fraction 1 - e^{-gamma1}
    double window_volume = 0.0;
    double mean_F = 0.0;       ///< p |W|
    double c = 0.0;            ///< gamma1 / (p |W|)

    static StationaryModelSummary from_moments(double gamma1, ExtendedReal gamma2, double window_volume);
    static StationaryModelSummary from_law(const GrainVolumeLaw& law, double window_volume);
};

enum class VolumeVariant { kMean, kSecondMoment };

/// a bounds volume(K ∩ W) for almost every grain. The second-moment form
/// throws DomainError when gamma2 is infinite.
double log_bounded_volume_bound(const StationaryModelSummary& m, double a, VolumeVariant variant, double r);
/// Deterministic grain of volume v: (r/v) psi(r / (p|W|)).
double log_fixed_grain_bound(const StationaryModelSummary& m, double grain_volume, double r);
/// Mean form with a = |W|; needs nothing beyond gamma1 < inf.
double log_window_bound(const StationaryModelSummary& m, double r);
/// -integral_0^r h~^{-1}(c u) du by adaptive Gauss-Kronrod quadrature.
double log_volume_law_bound(const StationaryModelSummary& m, const GrainVolumeLaw& law, double r);
/// -beta r + (alpha/c) log(1 + beta c r / alpha)
double log_gamma_levy_closed_form_bound(double alpha, double beta, double c, double r);
/// -beta r + ((alpha+1)/c) (((alpha + beta c r)/alpha)^{alpha/(alpha+1)} - 1)
double log_gamma_closed_form_bound(double alpha, double beta, double c, double r);
/// -c (r + E[F] log(E[F] / (r + E[F])))
double log_mecke_volume_bound(const StationaryModelSummary& m, double r);
/// -(1/a) [r + M log(M / (r + M))] with M = E[F] + b/a.
double log_mecke_bound(double a, double b, double mean_F, double r);

inline double nu_star_chernoff_bound(const DiscreteMeasure& nu_star, SZero s0, double r) {
    return std::exp(log_nu_star_chernoff_bound(nu_star, s0, r));
}
inline double inverse_integral_bound(const DiscreteMeasure& nu_star, SZero s0, double r) {
    return std::exp(log_inverse_integral_bound(nu_star, s0, r));
}
inline double bounded_moment_bound(const DiscreteMeasure& nu_star, double a, int i, double r) {
    return std::exp(log_bounded_moment_bound(nu_star, a, i, r));
}
inline double bounded_volume_bound(const StationaryModelSummary& m, double a, VolumeVariant v, double r) {
    return std::exp(log_bounded_volume_bound(m, a, v, r));
}
inline double fixed_grain_bound(const StationaryModelSummary& m, double grain_volume, double r) {
    return std::exp(log_fixed_grain_bound(m, grain_volume, r));
}
inline double window_bound(const StationaryModelSummary& m, double r) {
    return std::exp(log_window_bound(m, r));
}
inline double volume_law_bound(const StationaryModelSummary& m, const GrainVolumeLaw& law, double r) {
    return std::exp(log_volume_law_bound(m, law, r));
}
inline double gamma_levy_closed_form_bound(double alpha, double beta, double c, double r) {
    return std::exp(log_gamma_levy_closed_form_bound(alpha, beta, c, r));
}
inline double gamma_closed_form_bound(double alpha, double beta, double c, double r) {
    return std::exp(log_gamma_closed_form_bound(alpha, beta, c, r));
}
inline double mecke_volume_bound(const StationaryModelSummary& m, double r) {
    return std::exp(log_mecke_volume_bound(m, r));
}
inline double mecke_bound(double a, double b, double mean_F, double r) {
    return std::exp(log_mecke_bound(a, b, mean_F, r));
}

// ---------------------------------------------------------------------------
// Curves

/// Open interval (lower, upper) of deviations where a bound is proven.
struct Validity {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();

    bool contains(double r) const noexcept { return r > lower && r < upper; }
};

struct CurvePoint {
    double r = 0.0;
    double log_bound = 0.0;
    /// exp(log_bound), floored at the smallest normal double so it stays in (0, 1].
    double bound() const noexcept;
};

struct TailBoundCurve {
    BoundId id{};
    std::vector<CurvePoint> points;  ///< ascending r, all inside validity
    Validity validity;

    /// Point at r (relative match 1e-12), or nullptr.
    const CurvePoint* at(double r) const noexcept;
};

/// Evaluates `log_bound` on the grid points that fall inside `validity`.
TailBoundCurve make_curve(BoundId id, const std::function<double(double)>& log_bound,
                          std::span<const double> r_grid, Validity validity = {});

struct BestBound {
    BoundId id{};
    double bound = 1.0;
    double log_bound = 0.0;
};

/// Smallest bound at r among curves valid there. Ties go to the earlier
/// curve. Throws std::invalid_argument when no curve is valid at r.
BestBound best_bound(std::span<const TailBoundCurve> curves, double r);

/// CSV with header `r,bound,theorem_id`.
void write_csv(std::ostream& out, const TailBoundCurve& curve);

}  // namespace boolconc
