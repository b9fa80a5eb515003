#pragma once

// Monte Carlo discretization of the jump measures of F = vol(Z ∩ W) for a
// stationary Boolean model.

#include <cstddef>
#include <cstdint>

#include "boolconc/discrete_measure.hpp"
#include "boolconc/model.hpp"

namespace boolconc {

/// nu: image of the grain intensity measure under K -> vol(K ∩ W). Sampled
/// grains are placed uniformly on the dilated window; each sample that meets
/// W becomes an atom of mass gamma * vol(dilated window) / n_samples.
/// The simulated (possibly truncated) grain law is used.
DiscreteMeasure nu_stationary(const BooleanModelSpec& spec, const Window& window, std::size_t n_samples,
                              std::uint64_t seed);

/// nu* = tau(gamma_1) nu = (p / gamma_1) nu, same atoms and seed stream as
/// nu_stationary.
DiscreteMeasure nu_star_stationary(const BooleanModelSpec& spec, const Window& window, std::size_t n_samples,
                                   std::uint64_t seed);

}  // namespace boolconc
