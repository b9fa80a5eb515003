// boolconc: concentration bounds and Monte Carlo checks for Boolean models.
//
//   boolconc bound           --config run.json [--out dir]
//   boolconc simulate        --config run.json [--seed N] [--out dir] [--dump-realization]
//   boolconc compare         --config run.json [--seed N] [--out dir]
//   boolconc verify-identity --config run.json [--seed N] [--out dir]
//
// Exit codes: 0 success, 1 runtime failure or failed verification checks,
// 2 configuration error, 3 bound violation found by compare.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "boolconc/commands.hpp"
#include "boolconc/config.hpp"
#include "boolconc/errors.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};

void add_common(CLI::App* sub, CommonArgs& args, bool with_seed) {
    sub->add_option("--config", args.config_path, "JSON run configuration")->required();
    if (with_seed) sub->add_option("--seed", args.seed, "master seed (overrides the config)");
    sub->add_option("--out", args.out_dir, "output directory (overrides the config)");
}

boolconc::RunConfig load(const CommonArgs& args) {
    boolconc::RunConfig config = boolconc::load_config(args.config_path);
    if (args.seed) config.seed = *args.seed;
    if (args.out_dir) config.output_dir = *args.out_dir;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Concentration bounds and Monte Carlo checks for Boolean models"};
    app.require_subcommand(1);

    CommonArgs bound_args;
    CommonArgs simulate_args;
    CommonArgs compare_args;
    CommonArgs verify_args;
    bool dump = false;
    auto* bound = app.add_subcommand("bound", "tabulate the requested tail bounds");
    add_common(bound, bound_args, true);
    auto* simulate = app.add_subcommand("simulate", "estimate the tail of F by simulation");
    add_common(simulate, simulate_args, true);
    simulate->add_flag("--dump-realization", dump, "also write one realization as CSV");
    auto* compare = app.add_subcommand("compare", "simulate and check every bound against the empirical tail");
    add_common(compare, compare_args, true);
    auto* verify = app.add_subcommand("verify-identity", "run the finite-space verification battery");
    add_common(verify, verify_args, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bound->parsed()) {
            const auto config = load(bound_args);
            const auto curves = boolconc::cmd_bound(config, config.output_dir);
            std::cout << "wrote " << curves.size() << " bound curves to " << config.output_dir << '\n';
            return 0;
        }
        if (simulate->parsed()) {
            const auto config = load(simulate_args);
            const auto run = boolconc::cmd_simulate(config, config.output_dir, dump);
            std::cout << "mean F " << run.tail.mean_F_hat << " +- " << run.tail.se_mean << ", p_hat "
                      << run.fraction.p_hat << " +- " << run.fraction.standard_error << '\n';
            return 0;
        }
        if (compare->parsed()) {
            const auto config = load(compare_args);
            const auto run = boolconc::cmd_compare(config, config.output_dir);
            std::cout << run.violations << " violation(s) over " << run.simulation.tail.r_grid.size()
                      << " grid points\n";
            return run.violations == 0 ? 0 : 3;
        }
        const auto config = load(verify_args);
        const auto report = boolconc::cmd_verify_identity(config, config.output_dir);
        std::size_t failed = 0;
        for (const auto& row : report.rows) failed += row.pass ? 0 : 1;
        std::cout << report.rows.size() - failed << '/' << report.rows.size() << " checks passed\n";
        return failed == 0 ? 0 : 1;
    } catch (const boolconc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
