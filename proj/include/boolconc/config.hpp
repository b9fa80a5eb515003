#pragma once

// Run configuration shared by the command-line subcommands, stored as one
// JSON document (schema in README.md).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolconc/bounds.hpp"
#include "boolconc/model.hpp"
#include "boolconc/simulator.hpp"
#include "boolconc/testbed.hpp"
#include "boolconc/volume_law.hpp"

namespace boolconc {

struct RGridSpec {
    enum class Spacing { kLinear, kLog };

    double min = 0.1;
    double max = 1.0;
    std::size_t count = 10;
    Spacing spacing = Spacing::kLinear;

    /// count points from min to max inclusive.
    std::vector<double> values() const;

    friend bool operator==(const RGridSpec&, const RGridSpec&) = default;
};

struct BoundOptions {
    /// Bound on vol(K ∩ W) for the bounded-jump forms; default
    /// min(essential max of the volume law, |W|), or the largest nu* atom.
    std::optional<double> a;
    /// Constants of the generic Mecke-route bound; default a = 1/c, b = 0.
    std::optional<double> mecke_a;
    std::optional<double> mecke_b;
    std::size_t nu_star_samples = 20000;

    friend bool operator==(const BoundOptions&, const BoundOptions&) = default;
};

struct SimulationConfig {
    std::size_t n_reps = 1000;
    VolumeMethod method = VolumeMethod::exact_1d();
    /// Points per replication for the volume-fraction estimate.
    std::size_t fraction_points = 1000;
    double ci_level = 0.95;
    unsigned threads = 0;

    friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

struct TestbedConfig {
    std::size_t n_samples = 100000;
    std::vector<BatteryGroup> battery = default_battery();

    friend bool operator==(const TestbedConfig&, const TestbedConfig&) = default;
};

struct RunConfig {
    /// Simulatable germ-grain model; absent for bounds-only volume-law configs.
    std::optional<BooleanModelSpec> model;
    /// Explicit volume law (bounds only); absent when `model` is given.
    std::optional<GrainVolumeLaw> volume_law;
    Window window{std::vector<double>{0.0}, std::vector<double>{1.0}};
    RGridSpec r_grid;
    std::vector<BoundId> bounds;
    BoundOptions bound_options;
    SimulationConfig simulation;
    TestbedConfig testbed;
    std::uint64_t seed = 0;
    std::string output_dir = "out";

    /// Volume law of the model (explicit, or derived from the grain model).
    GrainVolumeLaw effective_volume_law() const;
    /// gamma_1, gamma_2, p, E[F] and c of the untruncated model.
    StationaryModelSummary summary() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a config. Throws ConfigError naming the offending
/// field or the violated precondition of a requested bound.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);
/// JSON text that parse_config maps back to an equal config.
std::string serialize_config(const RunConfig& config);

/// Throws ConfigError if a bound cannot be evaluated for this model.
void check_bound_applicable(const RunConfig& config, BoundId id);
/// Throws ConfigError unless the config describes a simulatable model with
/// valid simulation settings.
void check_simulatable(const RunConfig& config);

}  // namespace boolconc
