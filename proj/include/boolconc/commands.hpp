#pragma once

// The work behind each CLI subcommand. Every function writes its files into
// `out_dir` (created if needed) and returns the computed data.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "boolconc/bounds.hpp"
#include "boolconc/config.hpp"
#include "boolconc/simulator.hpp"
#include "boolconc/testbed.hpp"

namespace boolconc {

/// Seed streams derived from RunConfig::seed.
enum class SeedStream : std::uint64_t { kNuStar = 1, kTail = 2, kVolumeFraction = 3, kTestbed = 4, kDump = 5 };

/// Curves for config.bounds on the config's r grid, in the requested order.
std::vector<TailBoundCurve> compute_bound_curves(const RunConfig& config);

/// Header `r,<code>...,best_bound,best_theorem`; empty cells where a bound is
/// not valid.
void write_bounds_table(std::ostream& out, std::span<const TailBoundCurve> curves, std::span<const double> r_grid);

/// bound_<code>.csv for each curve and the merged bounds.csv. ConfigError on
/// an empty bound list.
std::vector<TailBoundCurve> cmd_bound(const RunConfig& config, const std::filesystem::path& out_dir);

struct SimulationRun {
    TailEstimate tail;
    VolumeFractionEstimate fraction;
};

/// tail.csv and metadata.json; optionally realization.csv with the first
/// replication's grains.
SimulationRun cmd_simulate(const RunConfig& config, const std::filesystem::path& out_dir,
                           bool dump_realization = false);

struct CompareRun {
    std::vector<TailBoundCurve> curves;
    SimulationRun simulation;
    std::size_t violations = 0;  ///< grid points where ci_low exceeds the best valid bound
};

/// compare.csv (`r,tail,ci_low,ci_high,<codes>...,best_bound,violation_flag`)
/// and summary.txt.
CompareRun cmd_compare(const RunConfig& config, const std::filesystem::path& out_dir);

/// identity_checks.csv with one row per check.
TestbedReport cmd_verify_identity(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace boolconc
