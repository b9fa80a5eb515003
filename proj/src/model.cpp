#include "boolconc/model.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "quadrature.hpp"

namespace boolconc {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double x, const std::string& what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(what + " must be finite and > 0");
}

// Number of quantile atoms used when a random-ball volume law has no closed form.
constexpr int kVolumeLawAtoms = 256;

// Antiderivative of sqrt(R^2 - x^2).
double half_chord_primitive(double x, double radius) {
    const double t = std::clamp(x / radius, -1.0, 1.0);
    return 0.5 * radius * radius * (t * std::sqrt(std::max(0.0, 1.0 - t * t)) + std::asin(t));
}

// integral over x in [a,b] (relative to the disc center, within [-R,R]) of
// h(x) + clamp(t, -h(x), h(x)) with h(x) = sqrt(R^2 - x^2): the length of the
// chord at x lying below height t.
double chord_below(double a, double b, double radius, double t) {
    if (b <= a) return 0.0;
    const auto H = [radius](double lo, double hi) {
        return half_chord_primitive(hi, radius) - half_chord_primitive(lo, radius);
    };
    const double full = H(a, b);
    if (std::abs(t) >= radius) return t > 0.0 ? 2.0 * full : 0.0;
    const double w = std::sqrt(radius * radius - t * t);
    // |x| < w: h > |t|, clamp gives t. |x| >= w: clamp gives sign(t) h.
    const double in_lo = std::max(a, -w);
    const double in_hi = std::min(b, w);
    const double inner_len = std::max(0.0, in_hi - in_lo);
    const double outer_h = full - (inner_len > 0.0 ? H(in_lo, in_hi) : 0.0);
    const double sign = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
    return full + sign * outer_h + t * inner_len;
}

double interval_overlap(double a0, double a1, double b0, double b1) {
    return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

// ---------------------------------------------------------------------------

Window::Window(std::span<const double> lower, std::span<const double> upper) {
    if (lower.size() != upper.size() || lower.empty() || lower.size() > 3)
        throw std::invalid_argument("Window: lower and upper must have the same dimension in 1..3");
    dim_ = static_cast<int>(lower.size());
    for (int k = 0; k < dim_; ++k) {
        if (!std::isfinite(lower[k]) || !std::isfinite(upper[k]) || !(upper[k] > lower[k]))
            throw std::invalid_argument("Window: upper must exceed lower in every coordinate");
        lower_[k] = lower[k];
        upper_[k] = upper[k];
    }
}

double Window::volume() const noexcept {
    double v = 1.0;
    for (int k = 0; k < dim_; ++k) v *= side(k);
    return v;
}

Window Window::dilated(const Vec3& margin) const {
    Window w = *this;
    for (int k = 0; k < dim_; ++k) {
        w.lower_[k] -= margin[k];
        w.upper_[k] += margin[k];
    }
    return w;
}

Window Window::translated(const Vec3& offset) const {
    Window w = *this;
    for (int k = 0; k < dim_; ++k) {
        w.lower_[k] += offset[k];
        w.upper_[k] += offset[k];
    }
    return w;
}

// ---------------------------------------------------------------------------

double radius_quantile(const RadiusLaw& law, double probability) {
    return std::visit(Overloaded{
                          [&](const ExponentialRadius& l) { return -std::log1p(-probability) / l.rate; },
                          [&](const GammaRadius& l) {
                              return boost::math::gamma_p_inv(l.shape, probability) / l.rate;
                          },
                          [&](const UniformRadius& l) { return l.min + probability * (l.max - l.min); },
                      },
                      law);
}

double radius_moment(const RadiusLaw& law, int k) {
    return std::visit(Overloaded{
                          [&](const ExponentialRadius& l) { return std::tgamma(k + 1.0) / std::pow(l.rate, k); },
                          [&](const GammaRadius& l) {
                              return std::exp(std::lgamma(l.shape + k) - std::lgamma(l.shape)) / std::pow(l.rate, k);
                          },
                          [&](const UniformRadius& l) {
                              return (std::pow(l.max, k + 1) - std::pow(l.min, k + 1)) / ((k + 1) * (l.max - l.min));
                          },
                      },
                      law);
}

double radius_partial_moment(const RadiusLaw& law, int k, double t) {
    return std::visit(Overloaded{
                          [&](const ExponentialRadius& l) {
                              return radius_moment(law, k) * boost::math::gamma_p(1.0 + k, l.rate * t);
                          },
                          [&](const GammaRadius& l) {
                              return radius_moment(law, k) * boost::math::gamma_p(l.shape + k, l.rate * t);
                          },
                          [&](const UniformRadius& l) {
                              const double hi = std::clamp(t, l.min, l.max);
                              return (std::pow(hi, k + 1) - std::pow(l.min, k + 1)) / ((k + 1) * (l.max - l.min));
                          },
                      },
                      law);
}

bool radius_law_bounded(const RadiusLaw& law) noexcept { return std::holds_alternative<UniformRadius>(law); }

double unit_ball_volume(int dimension) {
    switch (dimension) {
        case 1: return 2.0;
        case 2: return std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi / 3.0;
        default: throw std::invalid_argument("unit_ball_volume: dimension must be 1, 2 or 3");
    }
}

// ---------------------------------------------------------------------------

void BooleanModelSpec::validate() const {
    if (dimension < 1 || dimension > 3) throw std::invalid_argument("model: dimension must be 1, 2 or 3");
    require_positive(germ_intensity, "model: germ intensity");
    std::visit(Overloaded{
                   [](const FixedBall& g) { require_positive(g.radius, "fixed_ball: radius"); },
                   [this](const FixedInterval& g) {
                       if (dimension != 1) throw std::invalid_argument("fixed_interval grains need dimension 1");
                       require_positive(g.length, "fixed_interval: length");
                   },
                   [this](const FixedBox& g) {
                       if (static_cast<int>(g.sides.size()) != dimension)
                           throw std::invalid_argument("fixed_box: need one side length per dimension");
                       for (double s : g.sides) require_positive(s, "fixed_box: side");
                   },
                   [](const RandomBall& g) {
                       std::visit(Overloaded{
                                      [](const ExponentialRadius& l) { require_positive(l.rate, "exponential radius: rate"); },
                                      [](const GammaRadius& l) {
                                          require_positive(l.shape, "gamma radius: shape");
                                          require_positive(l.rate, "gamma radius: rate");
                                      },
                                      [](const UniformRadius& l) {
                                          if (!(l.min >= 0.0) || !(l.max > l.min) || !std::isfinite(l.max))
                                              throw std::invalid_argument("uniform radius: need 0 <= min < max");
                                      },
                                  },
                                  g.radius_law);
                       if (!(g.truncation_quantile >= 1.0 - 1e-4 && g.truncation_quantile < 1.0))
                           throw std::invalid_argument("random_ball: truncation quantile must lie in [1-1e-4, 1)");
                   },
               },
               grain);
}

Vec3 BooleanModelSpec::support_half_extent() const {
    Vec3 half{};
    std::visit(Overloaded{
                   [&](const FixedBall& g) { half.fill(g.radius); },
                   [&](const FixedInterval& g) { half.fill(0.5 * g.length); },
                   [&](const FixedBox& g) {
                       for (std::size_t k = 0; k < g.sides.size(); ++k) half[k] = 0.5 * g.sides[k];
                   },
                   [&](const RandomBall& g) {
                       const double r_max = radius_law_bounded(g.radius_law)
                                                ? std::get<UniformRadius>(g.radius_law).max
                                                : radius_quantile(g.radius_law, g.truncation_quantile);
                       half.fill(r_max);
                   },
               },
               grain);
    for (int k = dimension; k < 3; ++k) half[k] = 0.0;
    return half;
}

double BooleanModelSpec::max_grain_volume() const {
    return std::visit(Overloaded{
                          [&](const FixedBall& g) { return unit_ball_volume(dimension) * std::pow(g.radius, dimension); },
                          [&](const FixedInterval& g) { return g.length; },
                          [&](const FixedBox& g) {
                              double v = 1.0;
                              for (double s : g.sides) v *= s;
                              return v;
                          },
                          [&](const RandomBall&) {
                              return unit_ball_volume(dimension) * std::pow(support_half_extent()[0], dimension);
                          },
                      },
                      grain);
}

double BooleanModelSpec::gamma1() const {
    if (const auto* g = std::get_if<RandomBall>(&grain))
        return germ_intensity * unit_ball_volume(dimension) * radius_moment(g->radius_law, dimension);
    return germ_intensity * max_grain_volume();
}

double BooleanModelSpec::gamma2() const {
    if (const auto* g = std::get_if<RandomBall>(&grain)) {
        const double kappa = unit_ball_volume(dimension);
        return germ_intensity * kappa * kappa * radius_moment(g->radius_law, 2 * dimension);
    }
    const double v = max_grain_volume();
    return germ_intensity * v * v;
}

double BooleanModelSpec::simulated_gamma1() const {
    if (const auto* g = std::get_if<RandomBall>(&grain)) {
        if (radius_law_bounded(g->radius_law)) return gamma1();
        const double r_max = support_half_extent()[0];
        return germ_intensity * unit_ball_volume(dimension) *
               radius_partial_moment(g->radius_law, dimension, r_max) / g->truncation_quantile;
    }
    return gamma1();
}

bool BooleanModelSpec::exact() const noexcept {
    if (const auto* g = std::get_if<RandomBall>(&grain)) return radius_law_bounded(g->radius_law);
    return true;
}

bool BooleanModelSpec::deterministic_grain() const noexcept { return !std::holds_alternative<RandomBall>(grain); }

GrainVolumeLaw BooleanModelSpec::volume_law() const {
    validate();
    if (deterministic_grain()) {
        const double v = max_grain_volume();
        if (germ_intensity == 1.0) return GrainVolumeLaw(PointMassLaw{v});
        return GrainVolumeLaw(EmpiricalLaw{DiscreteMeasure({{v, germ_intensity}})});
    }
    const auto& g = std::get<RandomBall>(grain);
    if (dimension == 1 && germ_intensity == 1.0) {
        // volume = 2R
        if (const auto* e = std::get_if<ExponentialRadius>(&g.radius_law)) return GrainVolumeLaw(ExponentialLaw{0.5 * e->rate});
        if (const auto* ga = std::get_if<GammaRadius>(&g.radius_law)) return GrainVolumeLaw(GammaLaw{ga->shape, 0.5 * ga->rate});
    }
    const double kappa = unit_ball_volume(dimension);
    std::vector<Atom> atoms;
    atoms.reserve(kVolumeLawAtoms);
    for (int i = 0; i < kVolumeLawAtoms; ++i) {
        const double prob = (i + 0.5) / kVolumeLawAtoms;
        const double radius = radius_quantile(g.radius_law, prob);
        if (radius > 0.0) atoms.push_back({kappa * std::pow(radius, dimension), germ_intensity / kVolumeLawAtoms});
    }
    return GrainVolumeLaw(EmpiricalLaw{DiscreteMeasure(std::move(atoms))});
}

// ---------------------------------------------------------------------------

bool Grain::contains(const Vec3& point, int dimension) const noexcept {
    if (shape == Shape::kBall) {
        double d2 = 0.0;
        for (int k = 0; k < dimension; ++k) {
            const double diff = point[k] - center[k];
            d2 += diff * diff;
        }
        return d2 <= radius * radius;
    }
    for (int k = 0; k < dimension; ++k)
        if (std::abs(point[k] - center[k]) > half_sides[k]) return false;
    return true;
}

double Grain::volume(int dimension) const noexcept {
    if (shape == Shape::kBall) return unit_ball_volume(dimension) * std::pow(radius, dimension);
    double v = 1.0;
    for (int k = 0; k < dimension; ++k) v *= 2.0 * half_sides[k];
    return v;
}

double disc_rectangle_area(double cx, double cy, double radius, double x0, double x1, double y0, double y1) {
    if (!(radius > 0.0)) return 0.0;
    const double a = std::max(x0 - cx, -radius);
    const double b = std::min(x1 - cx, radius);
    if (b <= a || y1 <= y0) return 0.0;
    return chord_below(a, b, radius, y1 - cy) - chord_below(a, b, radius, y0 - cy);
}

double Grain::clipped_volume(const Window& w) const {
    const int d = w.dimension();
    const Vec3& lo = w.lower();
    const Vec3& hi = w.upper();
    if (shape == Shape::kBox) {
        double v = 1.0;
        for (int k = 0; k < d; ++k) v *= interval_overlap(center[k] - half_sides[k], center[k] + half_sides[k], lo[k], hi[k]);
        return v;
    }
    switch (d) {
        case 1: return interval_overlap(center[0] - radius, center[0] + radius, lo[0], hi[0]);
        case 2: return disc_rectangle_area(center[0], center[1], radius, lo[0], hi[0], lo[1], hi[1]);
        default: {
            const double z0 = std::max(lo[2], center[2] - radius);
            const double z1 = std::min(hi[2], center[2] + radius);
            if (z1 <= z0) return 0.0;
            const auto slice = [&](double z) {
                const double dz = z - center[2];
                const double r = std::sqrt(std::max(0.0, radius * radius - dz * dz));
                return disc_rectangle_area(center[0], center[1], r, lo[0], hi[0], lo[1], hi[1]);
            };
            return integrate_gk(slice, z0, z1, 1e-11, 15);
        }
    }
}

}  // namespace boolconc
