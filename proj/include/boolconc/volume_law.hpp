#pragma once

#include <string>
#include <type_traits>
#include <utility>
#include <variant>

#include "boolconc/discrete_measure.hpp"
#include "boolconc/transforms.hpp"

namespace boolconc {

// Laws of the typical grain volume, i.e. the image of the grain measure Q
// under K -> volume(K). Total mass is the germ intensity times the grain
// probability law, so Empirical atoms carry that factor in their masses.

struct PointMassLaw {
    double volume;
    friend bool operator==(const PointMassLaw&, const PointMassLaw&) = default;
};
/// Density beta^alpha / Gamma(alpha) u^{alpha-1} e^{-beta u} (rate beta).
struct GammaLaw {
    double alpha;
    double beta;
    friend bool operator==(const GammaLaw&, const GammaLaw&) = default;
};
/// Levy measure alpha u^{-1} e^{-beta u} du of the gamma subordinator:
/// infinite total mass, finite first moment alpha / beta.
struct GammaLevyLaw {
    double alpha;
    double beta;
    friend bool operator==(const GammaLevyLaw&, const GammaLevyLaw&) = default;
};
/// Density beta e^{-beta u}; same as GammaLaw{1, beta}.
struct ExponentialLaw {
    double beta;
    friend bool operator==(const ExponentialLaw&, const ExponentialLaw&) = default;
};
struct EmpiricalLaw {
    DiscreteMeasure measure;
    friend bool operator==(const EmpiricalLaw&, const EmpiricalLaw&) = default;
};

class GrainVolumeLaw {
public:
    using Variant = std::variant<PointMassLaw, GammaLaw, GammaLevyLaw, ExponentialLaw, EmpiricalLaw>;

    GrainVolumeLaw(Variant v);  // NOLINT(google-explicit-constructor)
    template <class Law>
        requires std::is_constructible_v<Variant, Law>
    GrainVolumeLaw(Law law) : GrainVolumeLaw(Variant(std::move(law))) {}  // NOLINT(google-explicit-constructor)

    const Variant& variant() const noexcept { return law_; }
    std::string name() const;

    bool total_mass_finite() const noexcept;
    /// gamma_1 = integral of the volume.
    double first_moment() const;
    /// gamma_2 = integral of the squared volume; may be +inf.
    ExtendedReal second_moment() const;
    /// Exponential-moment threshold: beta for the gamma family, +inf otherwise.
    SZero s_zero() const;
    /// Essential supremum of the volume (+inf for unbounded laws).
    ExtendedReal essential_max() const;
    /// A single deterministic volume (point mass or a one-atom empirical law).
    bool is_deterministic() const noexcept;

    friend bool operator==(const GrainVolumeLaw&, const GrainVolumeLaw&) = default;

private:
    Variant law_;
};

/// h~(s) = integral v (e^{s v} - 1) Q(dv); +inf for s >= s0 of the law.
ExtendedReal h_tilde(const GrainVolumeLaw& law, double s);

/// Inverse of h_tilde; closed forms for the gamma family and point masses,
/// monotone root finding otherwise.
double h_tilde_inverse(const GrainVolumeLaw& law, double u, double tol = kDefaultRootTolerance);

}  // namespace boolconc
