#include "boolconc/nu_star.hpp"

#include <stdexcept>

#include "boolconc/kernels.hpp"
#include "boolconc/simulator.hpp"

namespace boolconc {

DiscreteMeasure nu_stationary(const BooleanModelSpec& spec, const Window& window, std::size_t n_samples,
                              std::uint64_t seed) {
    if (spec.germ_intensity == 0.0) return DiscreteMeasure(std::vector<Atom>{});
    spec.validate();
    if (spec.dimension != window.dimension()) throw std::invalid_argument("nu_stationary: dimension mismatch");
    if (n_samples == 0) throw std::invalid_argument("nu_stationary: n_samples must be > 0");
    const Window box = window.dilated(spec.support_half_extent());
    const double mass = spec.germ_intensity * box.volume() / static_cast<double>(n_samples);

    Rng rng(seed);
    std::vector<Atom> atoms;
    atoms.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const Grain g = sample_grain(spec, box, rng);
        const double u = g.clipped_volume(window);
        if (u > 0.0) atoms.push_back({u, mass});
    }
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure nu_star_stationary(const BooleanModelSpec& spec, const Window& window, std::size_t n_samples,
                                   std::uint64_t seed) {
    const DiscreteMeasure nu = nu_stationary(spec, window, n_samples, seed);
    if (nu.empty()) return nu;
    return nu.scaled_masses(tau(spec.simulated_gamma1()));
}

}  // namespace boolconc
