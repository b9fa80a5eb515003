#pragma once

// Stationary germ-grain models in R^d (d = 1, 2, 3) and the observation
// window. Germs carry the grain's center.

#include <array>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "boolconc/volume_law.hpp"

namespace boolconc {

using Vec3 = std::array<double, 3>;

/// Axis-aligned box. Unused trailing coordinates are zero.
class Window {
public:
    Window(std::span<const double> lower, std::span<const double> upper);

    int dimension() const noexcept { return dim_; }
    const Vec3& lower() const noexcept { return lower_; }
    const Vec3& upper() const noexcept { return upper_; }
    double side(int axis) const noexcept { return upper_[axis] - lower_[axis]; }
    double volume() const noexcept;

    /// Box grown by margin[k] on both sides of every axis.
    Window dilated(const Vec3& margin) const;
    /// Box moved by offset.
    Window translated(const Vec3& offset) const;

    friend bool operator==(const Window&, const Window&) = default;

private:
    int dim_ = 0;
    Vec3 lower_{};
    Vec3 upper_{};
};

// Radius laws for random balls.
struct ExponentialRadius {
    double rate;
    friend bool operator==(const ExponentialRadius&, const ExponentialRadius&) = default;
};
struct GammaRadius {
    double shape;
    double rate;
    friend bool operator==(const GammaRadius&, const GammaRadius&) = default;
};
struct UniformRadius {
    double min;
    double max;
    friend bool operator==(const UniformRadius&, const UniformRadius&) = default;
};
using RadiusLaw = std::variant<ExponentialRadius, GammaRadius, UniformRadius>;

double radius_quantile(const RadiusLaw& law, double probability);
/// E[R^k]
double radius_moment(const RadiusLaw& law, int k);
/// E[R^k ; R <= t]
double radius_partial_moment(const RadiusLaw& law, int k, double t);
bool radius_law_bounded(const RadiusLaw& law) noexcept;

inline constexpr double kDefaultTruncationQuantile = 1.0 - 1e-6;

struct FixedBall {
    double radius;
    friend bool operator==(const FixedBall&, const FixedBall&) = default;
};
/// Ball with random radius. Unbounded radius laws are sampled conditionally
/// on R <= quantile(truncation_quantile).
struct RandomBall {
    RadiusLaw radius_law;
    double truncation_quantile = kDefaultTruncationQuantile;
    friend bool operator==(const RandomBall&, const RandomBall&) = default;
};
/// Segment of the given length centred at the germ (d = 1 only).
struct FixedInterval {
    double length;
    friend bool operator==(const FixedInterval&, const FixedInterval&) = default;
};
struct FixedBox {
    std::vector<double> sides;
    friend bool operator==(const FixedBox&, const FixedBox&) = default;
};
using GrainModel = std::variant<FixedBall, RandomBall, FixedInterval, FixedBox>;

struct BooleanModelSpec {
    int dimension = 1;
    double germ_intensity = 1.0;  ///< germs per unit volume
    GrainModel grain = FixedInterval{1.0};

    /// Throws std::invalid_argument on inconsistent parameters.
    void validate() const;

    /// Half-extent of the grain's bounding box around its germ, per axis,
    /// using the truncated radius for random balls.
    Vec3 support_half_extent() const;
    /// Largest grain volume that can be simulated.
    double max_grain_volume() const;
    /// gamma_1 of the untruncated model.
    double gamma1() const;
    /// gamma_2 of the untruncated model.
    double gamma2() const;
    /// gamma_1 of the truncated model that is actually simulated.
    double simulated_gamma1() const;
    /// True when simulation reproduces the model without truncation.
    bool exact() const noexcept;
    /// Every grain identical.
    bool deterministic_grain() const noexcept;
    /// Volume law of Q (germ intensity included in the mass).
    GrainVolumeLaw volume_law() const;

    friend bool operator==(const BooleanModelSpec&, const BooleanModelSpec&) = default;
};

double unit_ball_volume(int dimension);

/// One grain of a realization.
struct Grain {
    enum class Shape { kBall, kBox };
    Shape shape = Shape::kBall;
    Vec3 center{};
    double radius = 0.0;     ///< balls (and intervals: half-length)
    Vec3 half_sides{};       ///< boxes

    bool contains(const Vec3& point, int dimension) const noexcept;
    double volume(int dimension) const noexcept;
    /// Volume of the grain clipped to the window: exact for intervals, boxes
    /// and discs; one-dimensional adaptive quadrature over exact disc slices
    /// for balls in R^3.
    double clipped_volume(const Window& w) const;
};

/// Area of the disc (center, radius) intersected with [x0,x1] x [y0,y1].
double disc_rectangle_area(double cx, double cy, double radius, double x0, double x1, double y0, double y1);

}  // namespace boolconc
