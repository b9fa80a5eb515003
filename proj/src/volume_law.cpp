#include "boolconc/volume_law.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace boolconc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument(std::string("GrainVolumeLaw: ") + what + " must be finite and > 0");
}

// alpha beta^alpha / (beta - s)^{alpha+1} - alpha / beta, written as
// (alpha/beta) * expm1(-(alpha+1) log1p(-s/beta)) to stay accurate near s = 0.
double gamma_h_tilde(double alpha, double beta, double s) {
    if (s >= beta) return kInf;
    return alpha / beta * std::expm1(-(alpha + 1.0) * std::log1p(-s / beta));
}

}  // namespace

GrainVolumeLaw::GrainVolumeLaw(Variant v) : law_(std::move(v)) {
    std::visit(Overloaded{
                   [](const PointMassLaw& l) { require_positive(l.volume, "volume"); },
                   [](const GammaLaw& l) {
                       require_positive(l.alpha, "alpha");
                       require_positive(l.beta, "beta");
                   },
                   [](const GammaLevyLaw& l) {
                       require_positive(l.alpha, "alpha");
                       require_positive(l.beta, "beta");
                   },
                   [](const ExponentialLaw& l) { require_positive(l.beta, "beta"); },
                   [](const EmpiricalLaw& l) {
                       if (l.measure.empty())
                           throw std::invalid_argument("GrainVolumeLaw: empirical law has no atoms");
                   },
               },
               law_);
}

std::string GrainVolumeLaw::name() const {
    return std::visit(Overloaded{
                          [](const PointMassLaw&) { return std::string("point_mass"); },
                          [](const GammaLaw&) { return std::string("gamma"); },
                          [](const GammaLevyLaw&) { return std::string("gamma_levy"); },
                          [](const ExponentialLaw&) { return std::string("exponential"); },
                          [](const EmpiricalLaw&) { return std::string("empirical"); },
                      },
                      law_);
}

bool GrainVolumeLaw::total_mass_finite() const noexcept {
    return !std::holds_alternative<GammaLevyLaw>(law_);
}

double GrainVolumeLaw::first_moment() const {
    return std::visit(Overloaded{
                          [](const PointMassLaw& l) { return l.volume; },
                          [](const GammaLaw& l) { return l.alpha / l.beta; },
                          [](const GammaLevyLaw& l) { return l.alpha / l.beta; },
                          [](const ExponentialLaw& l) { return 1.0 / l.beta; },
                          [](const EmpiricalLaw& l) { return moment(l.measure, 1); },
                      },
                      law_);
}

ExtendedReal GrainVolumeLaw::second_moment() const {
    return std::visit(Overloaded{
                          [](const PointMassLaw& l) { return l.volume * l.volume; },
                          [](const GammaLaw& l) { return l.alpha * (l.alpha + 1.0) / (l.beta * l.beta); },
                          [](const GammaLevyLaw& l) { return l.alpha / (l.beta * l.beta); },
                          [](const ExponentialLaw& l) { return 2.0 / (l.beta * l.beta); },
                          [](const EmpiricalLaw& l) { return moment(l.measure, 2); },
                      },
                      law_);
}

SZero GrainVolumeLaw::s_zero() const {
    return std::visit(Overloaded{
                          [](const PointMassLaw&) { return SZero::infinite(); },
                          [](const GammaLaw& l) { return SZero(l.beta); },
                          [](const GammaLevyLaw& l) { return SZero(l.beta); },
                          [](const ExponentialLaw& l) { return SZero(l.beta); },
                          [](const EmpiricalLaw&) { return SZero::infinite(); },
                      },
                      law_);
}

ExtendedReal GrainVolumeLaw::essential_max() const {
    return std::visit(Overloaded{
                          [](const PointMassLaw& l) { return l.volume; },
                          [](const EmpiricalLaw& l) { return l.measure.max_location(); },
                          [](const auto&) { return kInf; },
                      },
                      law_);
}

bool GrainVolumeLaw::is_deterministic() const noexcept {
    if (std::holds_alternative<PointMassLaw>(law_)) return true;
    if (const auto* e = std::get_if<EmpiricalLaw>(&law_)) return e->measure.size() == 1;
    return false;
}

ExtendedReal h_tilde(const GrainVolumeLaw& law, double s) {
    if (std::isnan(s) || s < 0.0) throw std::invalid_argument("h_tilde: s must be >= 0");
    return std::visit(Overloaded{
                          [s](const PointMassLaw& l) { return l.volume * std::expm1(s * l.volume); },
                          [s](const GammaLaw& l) { return gamma_h_tilde(l.alpha, l.beta, s); },
                          [s](const ExponentialLaw& l) { return gamma_h_tilde(1.0, l.beta, s); },
                          [s](const GammaLevyLaw& l) {
                              // alpha/(beta-s) - alpha/beta
                              if (s >= l.beta) return kInf;
                              return l.alpha * s / (l.beta * (l.beta - s));
                          },
                          [s](const EmpiricalLaw& l) { return h_value(l.measure, s); },
                      },
                      law.variant());
}

double h_tilde_inverse(const GrainVolumeLaw& law, double u, double tol) {
    if (std::isnan(u) || u < 0.0) throw std::invalid_argument("h_tilde_inverse: u must be >= 0");
    if (u == 0.0) return 0.0;
    if (u == kInf) return law.s_zero().value();
    return std::visit(
        Overloaded{
            [u](const PointMassLaw& l) { return std::log1p(u / l.volume) / l.volume; },
            [u](const GammaLevyLaw& l) {
                // beta - alpha beta / (beta u + alpha)
                return l.beta * (l.beta * u) / (l.beta * u + l.alpha);
            },
            [u](const GammaLaw& l) {
                // beta - (alpha beta^{alpha+1} / (beta u + alpha))^{1/(alpha+1)}
                return -l.beta * std::expm1(-std::log1p(l.beta * u / l.alpha) / (l.alpha + 1.0));
            },
            [u](const ExponentialLaw& l) {
                return -l.beta * std::expm1(-0.5 * std::log1p(l.beta * u));
            },
            [u, tol](const EmpiricalLaw& l) { return h_inverse(l.measure, u, tol); },
        },
        law.variant());
}

}  // namespace boolconc
