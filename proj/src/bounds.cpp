#include "boolconc/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "boolconc/errors.hpp"
#include "boolconc/kernels.hpp"
#include "csv_util.hpp"
#include "quadrature.hpp"

namespace boolconc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGoldenFraction = 0.6180339887498949;  // 1/phi

constexpr std::array<std::pair<BoundId, std::string_view>, 14> kCodes{{
    {BoundId::kNuStarChernoff, "T3_5"},
    {BoundId::kInverseIntegral, "T3_7"},
    {BoundId::kBoundedMass, "C3_8_i0"},
    {BoundId::kBoundedFirstMoment, "C3_8_i1"},
    {BoundId::kBoundedSecondMoment, "C3_8_i2"},
    {BoundId::kVolumeMean, "C4_2_a"},
    {BoundId::kVolumeSecondMoment, "C4_2_b"},
    {BoundId::kFixedGrain, "R4_3"},
    {BoundId::kWindowBound, "E4_12"},
    {BoundId::kVolumeLawInverse, "C4_4"},
    {BoundId::kGammaLevyClosedForm, "EX4_5"},
    {BoundId::kGammaClosedForm, "EX4_6"},
    {BoundId::kMeckeVolume, "P4_8"},
    {BoundId::kMeckeGeneral, "T2_4"},
}};

constexpr std::array<BoundId, 14> kAllIds = [] {
    std::array<BoundId, 14> ids{};
    for (std::size_t i = 0; i < kCodes.size(); ++i) ids[i] = kCodes[i].first;
    return ids;
}();

void require_deviation(double r, const char* who) {
    if (std::isnan(r) || !(r > 0.0))
        throw std::invalid_argument(std::string(who) + ": deviation r must be > 0");
}

void require_positive(double x, const char* who, const char* what) {
    if (std::isnan(x) || !(x > 0.0))
        throw std::invalid_argument(std::string(who) + ": " + what + " must be > 0");
}

}  // namespace

std::string_view bound_code(BoundId id) {
    for (const auto& [bid, code] : kCodes)
        if (bid == id) return code;
    throw std::invalid_argument("bound_code: unknown BoundId");
}

BoundId parse_bound_code(std::string_view code) {
    for (const auto& [bid, c] : kCodes)
        if (c == code) return bid;
    throw std::invalid_argument("unknown theorem_id '" + std::string(code) + "'");
}

std::span<const BoundId> all_bound_ids() { return kAllIds; }

// ---------------------------------------------------------------------------

ChernoffResult chernoff_optimize(const std::function<double(double)>& cumulant, SZero s0, double r,
                                 double tol, const std::function<double(double)>& derivative) {
    require_deviation(r, "chernoff_optimize");
    if (!(tol > 0.0)) throw std::invalid_argument("chernoff_optimize: tolerance must be > 0");

    auto objective = [&](double s) {
        const double k = cumulant(s);
        if (std::isnan(k) || k == kInf) return kInf;
        return k - s * r;
    };

    double hi = 0.0;
    if (!s0.is_infinite()) {
        hi = s0.value();
    } else {
        // Double until the objective stops decreasing; the minimizer of the
        // convex objective then lies in (0, 2 hi).
        hi = 1.0;
        double g_hi = objective(hi);
        while (std::isfinite(g_hi) && hi < 1e300) {
            const double g_next = objective(2.0 * hi);
            if (!(g_next < g_hi)) break;
            hi *= 2.0;
            g_hi = g_next;
        }
        hi *= 2.0;
    }

    double a = 0.0;
    double b = hi;
    double c = b - kGoldenFraction * (b - a);
    double d = a + kGoldenFraction * (b - a);
    double gc = objective(c);
    double gd = objective(d);
    for (int iter = 0; iter < 2000 && (b - a) > tol * 0.5 * (a + b); ++iter) {
        if (gc <= gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - kGoldenFraction * (b - a);
            gc = objective(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + kGoldenFraction * (b - a);
            gd = objective(d);
        }
    }
    double s_star = gc <= gd ? c : d;
    double g_star = std::min(gc, gd);

    if (derivative) {
        // K'(s) - r changes sign at the interior minimizer; widen the golden
        // bracket until it straddles the root, then bisect.
        auto slope = [&](double s) { return derivative(s) - r; };
        double lo = a;
        double up = b;
        for (int k = 0; k < 60 && lo > 0.0 && slope(lo) > 0.0; ++k) lo *= 0.5;
        if (lo > 0.0 && slope(lo) > 0.0) lo = 0.0;
        for (int k = 0; k < 60 && slope(up) < 0.0; ++k) {
            const double next = up + (up - lo + 1e-300);
            if (!s0.is_infinite() && next >= s0.value()) break;
            up = next;
        }
        if (slope(lo) <= 0.0 && slope(up) >= 0.0) {
            for (int k = 0; k < 200 && up - lo > 2.0 * std::numeric_limits<double>::epsilon() * up; ++k) {
                const double mid = 0.5 * (lo + up);
                if (slope(mid) < 0.0)
                    lo = mid;
                else
                    up = mid;
            }
            const double polished = 0.5 * (lo + up);
            const double g_polished = objective(polished);
            if (g_polished <= g_star) {
                s_star = polished;
                g_star = g_polished;
            }
        }
    }
    return {s_star, std::min(g_star, 0.0)};
}

double log_nu_star_chernoff_bound(const DiscreteMeasure& nu_star, SZero s0, double r) {
    require_deviation(r, "nu_star_chernoff_bound");
    if (nu_star.empty())
        throw DomainError("nu_star_chernoff_bound: zero jump measure, F has no upper deviation", 0.0);
    const auto cumulant = [&](double s) { return cumulant_integral(nu_star, s); };
    const auto derivative = [&](double s) { return h_value(nu_star, s); };
    return chernoff_optimize(cumulant, s0, r, kDefaultRootTolerance, derivative).log_bound;
}

double log_inverse_integral_bound(const DiscreteMeasure& nu_star, SZero s0, double r) {
    return -integral_h_inverse(nu_star, r, s0);
}

double log_bounded_moment_bound(const DiscreteMeasure& nu_star, double a, int i, double r) {
    require_deviation(r, "bounded_moment_bound");
    require_positive(a, "bounded_moment_bound", "jump bound a");
    if (nu_star.max_location() > a)
        throw std::invalid_argument("bounded_moment_bound: an atom of nu* exceeds the jump bound a");
    const double m_i = moment(nu_star, i);
    if (!(m_i > 0.0) || !std::isfinite(m_i))
        throw DomainError("bounded_moment_bound: moment m_" + std::to_string(i) + " must lie in (0, inf)");
    return (r / a) * psi(std::pow(a, i - 1) * r / m_i);
}

BoundParameters lipschitz_scale(const BoundParameters& base, double c_T) {
    if (std::isnan(c_T) || !(c_T > 0.0) || !std::isfinite(c_T))
        throw std::invalid_argument("lipschitz_scale: Lipschitz constant must be finite and > 0");
    const SZero s0 = base.s0.is_infinite() ? SZero::infinite() : SZero(base.s0.value() / c_T);
    return {base.nu_star.scaled_locations(c_T), s0};
}

// ---------------------------------------------------------------------------

StationaryModelSummary StationaryModelSummary::from_moments(double gamma1, ExtendedReal gamma2,
                                                            double window_volume) {
    if (!(gamma1 > 0.0) || !std::isfinite(gamma1))
        throw std::invalid_argument("StationaryModelSummary: gamma1 must lie in (0, inf)");
    if (std::isnan(gamma2) || gamma2 < 0.0)
        throw std::invalid_argument("StationaryModelSummary: gamma2 must be >= 0");
    if (!(window_volume > 0.0) || !std::isfinite(window_volume))
        throw std::invalid_argument("StationaryModelSummary: window volume must be finite and > 0");
    StationaryModelSummary m;
    m.gamma1 = gamma1;
    m.gamma2 = gamma2;
    m.p = -std::expm1(-gamma1);
    m.window_volume = window_volume;
    m.mean_F = m.p * window_volume;
    m.c = gamma1 / m.mean_F;
    return m;
}

StationaryModelSummary StationaryModelSummary::from_law(const GrainVolumeLaw& law, double window_volume) {
    return from_moments(law.first_moment(), law.second_moment(), window_volume);
}

double log_bounded_volume_bound(const StationaryModelSummary& m, double a, VolumeVariant variant, double r) {
    require_deviation(r, "bounded_volume_bound");
    require_positive(a, "bounded_volume_bound", "volume bound a");
    if (variant == VolumeVariant::kMean) return (r / a) * psi(r / m.mean_F);
    if (!std::isfinite(m.gamma2))
        throw DomainError("bounded_volume_bound: second-moment form needs gamma2 < inf");
    return (r / a) * psi(a * m.gamma1 * r / (m.mean_F * m.gamma2));
}

double log_fixed_grain_bound(const StationaryModelSummary& m, double grain_volume, double r) {
    require_positive(grain_volume, "fixed_grain_bound", "grain volume");
    return log_bounded_volume_bound(m, grain_volume, VolumeVariant::kMean, r);
}

double log_window_bound(const StationaryModelSummary& m, double r) {
    return log_bounded_volume_bound(m, m.window_volume, VolumeVariant::kMean, r);
}

double log_volume_law_bound(const StationaryModelSummary& m, const GrainVolumeLaw& law, double r) {
    require_deviation(r, "volume_law_bound");
    const auto integrand = [&](double u) { return h_tilde_inverse(law, m.c * u, 1e-13); };
    return -integrate_gk(integrand, 0.0, r, 1e-13);
}

double log_gamma_levy_closed_form_bound(double alpha, double beta, double c, double r) {
    require_positive(alpha, "gamma_levy_closed_form_bound", "alpha");
    require_positive(beta, "gamma_levy_closed_form_bound", "beta");
    require_positive(c, "gamma_levy_closed_form_bound", "c");
    require_deviation(r, "gamma_levy_closed_form_bound");
    // -beta r + (alpha/c) log1p(x) with x = beta c r / alpha
    const double x = beta * c * r / alpha;
    return -(alpha / c) * x_minus_log1p(x);
}

double log_gamma_closed_form_bound(double alpha, double beta, double c, double r) {
    require_positive(alpha, "gamma_closed_form_bound", "alpha");
    require_positive(beta, "gamma_closed_form_bound", "beta");
    require_positive(c, "gamma_closed_form_bound", "c");
    require_deviation(r, "gamma_closed_form_bound");
    // (1/c) [(alpha+1)((1+x)^q - 1) - alpha x], x = beta c r / alpha,
    // q = alpha/(alpha+1); the linear terms cancel exactly.
    const double x = beta * c * r / alpha;
    const double q = alpha / (alpha + 1.0);
    if (x < 0.1) {
        double coeff = q;  // binomial(q, k)
        double power = x;
        double sum = 0.0;
        for (int k = 2; k < 40; ++k) {
            coeff *= (q - (k - 1)) / k;
            power *= x;
            sum += coeff * power;
        }
        return (alpha + 1.0) * sum / c;
    }
    return (-alpha * x + (alpha + 1.0) * std::expm1(q * std::log1p(x))) / c;
}

double log_mecke_volume_bound(const StationaryModelSummary& m, double r) {
    require_deviation(r, "mecke_volume_bound");
    return -m.c * m.mean_F * x_minus_log1p(r / m.mean_F);
}

double log_mecke_bound(double a, double b, double mean_F, double r) {
    require_positive(a, "mecke_bound", "a");
    require_deviation(r, "mecke_bound");
    if (std::isnan(b) || b < 0.0) throw std::invalid_argument("mecke_bound: b must be >= 0");
    const double shifted_mean = mean_F + b / a;
    if (!(shifted_mean > 0.0))
        throw DomainError("mecke_bound: E[F] + b/a must be > 0 (otherwise DF = 0 identically)");
    return -(shifted_mean / a) * x_minus_log1p(r / shifted_mean);
}

// ---------------------------------------------------------------------------

double CurvePoint::bound() const noexcept {
    return std::max(std::exp(log_bound), std::numeric_limits<double>::min());
}

const CurvePoint* TailBoundCurve::at(double r) const noexcept {
    for (const CurvePoint& p : points)
        if (std::abs(p.r - r) <= 1e-12 * std::max(std::abs(r), 1.0)) return &p;
    return nullptr;
}

TailBoundCurve make_curve(BoundId id, const std::function<double(double)>& log_bound,
                          std::span<const double> r_grid, Validity validity) {
    std::vector<double> grid(r_grid.begin(), r_grid.end());
    std::sort(grid.begin(), grid.end());
    TailBoundCurve curve{id, {}, validity};
    for (double r : grid) {
        if (!validity.contains(r)) continue;
        curve.points.push_back({r, std::min(log_bound(r), 0.0)});
    }
    return curve;
}

BestBound best_bound(std::span<const TailBoundCurve> curves, double r) {
    const BestBound* best = nullptr;
    BestBound candidate;
    for (const TailBoundCurve& curve : curves) {
        if (!curve.validity.contains(r)) continue;
        const CurvePoint* p = curve.at(r);
        if (p == nullptr) continue;
        if (best == nullptr || p->log_bound < candidate.log_bound) {
            candidate = {curve.id, p->bound(), p->log_bound};
            best = &candidate;
        }
    }
    if (best == nullptr)
        throw std::invalid_argument("best_bound: no curve is valid at r = " + short_double(r));
    return candidate;
}

void write_csv(std::ostream& out, const TailBoundCurve& curve) {
    out << "r,bound,theorem_id\n";
    for (const CurvePoint& p : curve.points)
        out << short_double(p.r) << ',' << exact_double(p.bound()) << ',' << bound_code(curve.id) << '\n';
}

}  // namespace boolconc
