#pragma once

// Monte Carlo simulation of stationary Boolean models restricted to a window,
// and the estimators built on it.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "boolconc/model.hpp"
#include "boolconc/random.hpp"

namespace boolconc {

struct Realization {
    int dimension = 1;
    std::vector<Grain> grains;
};

/// One grain with its germ uniform on `placement` (center first, then the
/// radius for random balls).
Grain sample_grain(const BooleanModelSpec& spec, const Window& placement, Rng& rng);

/// Plus-sampling: Poisson(gamma * vol(W dilated by the grain half-extent))
/// germs, uniform on the dilated box, each carrying an independent grain.
/// Unbounded radius laws are sampled conditionally on R <= R_max.
Realization sample_realization(const BooleanModelSpec& spec, const Window& window, std::uint64_t seed);

/// CSV dump with columns x1..xd,param. param is the ball radius (half the
/// length for intervals) or, for boxes, the edge length along the first axis.
void write_realization_csv(std::ostream& out, const Realization& realization);

enum class VolumeMethodKind { kExact1d, kGrid, kQuasiMc };

struct VolumeMethod {
    VolumeMethodKind kind = VolumeMethodKind::kExact1d;
    std::size_t n_points = 0;

    static VolumeMethod exact_1d() { return {VolumeMethodKind::kExact1d, 0}; }
    /// n_points i.i.d. uniform points in the window.
    static VolumeMethod grid(std::size_t n_points) { return {VolumeMethodKind::kGrid, n_points}; }
    /// The first n_points of the Halton sequence (bases 2, 3, 5) mapped to
    /// the window; identical points for every call.
    static VolumeMethod quasi_mc(std::size_t n_points) { return {VolumeMethodKind::kQuasiMc, n_points}; }

    friend bool operator==(const VolumeMethod&, const VolumeMethod&) = default;
};

struct VolumeEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    /// False for quasi-MC, whose error is not estimated (standard_error = 0).
    bool se_quantified = true;
};

/// F = vol(Z ∩ W). Throws std::invalid_argument for exact_1d outside d = 1,
/// for a point method without points, or on a dimension mismatch. `seed`
/// drives the random points of the grid method only.
VolumeEstimate measure_volume(const Realization& realization, const Window& window, const VolumeMethod& method,
                              std::uint64_t seed = 0);

/// Volume of the part of W covered by exactly one grain.
VolumeEstimate exactly_once_volume(const Realization& realization, const Window& window, const VolumeMethod& method,
                                   std::uint64_t seed = 0);

struct SimulationOptions {
    std::size_t n_reps = 1000;
    VolumeMethod method = VolumeMethod::exact_1d();
    double ci_level = 0.95;
    unsigned threads = 0;  ///< 0 = hardware concurrency
};

struct TailEstimate {
    std::vector<double> r_grid;
    std::vector<double> tail;     ///< fraction of replications with F - E[F] >= r
    std::vector<double> ci_low;   ///< Clopper-Pearson limits at ci_level
    std::vector<double> ci_high;
    std::size_t n_reps = 0;
    double ci_level = 0.95;
    double mean_F_hat = 0.0;      ///< sample mean of F
    double se_mean = 0.0;
    double mean_F_analytic = 0.0; ///< p |W| of the simulated model
    double mean_F_used = 0.0;     ///< centering: analytic if the model is exact, else mean_F_hat
    std::vector<double> samples;  ///< F per replication, in replication order
};

/// Replication i uses streams derive_seed(seed, 2i) for the realization and
/// derive_seed(seed, 2i + 1) for random volume points. Throws
/// std::invalid_argument if n_reps < 100 or the r grid is not positive.
TailEstimate estimate_tail(const BooleanModelSpec& spec, const Window& window, std::span<const double> r_grid,
                           const SimulationOptions& options, std::uint64_t seed);

/// Recomputes tail and limits from stored samples at another confidence level.
TailEstimate with_ci_level(const TailEstimate& estimate, double level);

/// CSV with header `r,tail,ci_low,ci_high`.
void write_csv(std::ostream& out, const TailEstimate& estimate);

struct VolumeFractionEstimate {
    double p_hat = 0.0;
    double standard_error = 0.0;
};

/// Mean covered fraction of n_points uniform points of W over n_reps
/// replications; the error is taken from the spread across replications.
VolumeFractionEstimate estimate_volume_fraction(const BooleanModelSpec& spec, const Window& window,
                                                std::size_t n_points, std::size_t n_reps, std::uint64_t seed,
                                                unsigned threads = 0);

}  // namespace boolconc
