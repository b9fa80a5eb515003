#include "boolconc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "boolconc/errors.hpp"
#include "boolconc/nu_star.hpp"
#include "boolconc/random.hpp"
#include "csv_util.hpp"

namespace boolconc {
namespace {

std::uint64_t stream_seed(const RunConfig& c, SeedStream s) {
    return derive_seed(c.seed, static_cast<std::uint64_t>(s));
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
}

double default_volume_cap(const RunConfig& c) {
    return std::min(c.effective_volume_law().essential_max(), c.window.volume());
}

std::string cell(const TailBoundCurve& curve, double r) {
    const CurvePoint* p = curve.at(r);
    return p ? exact_double(p->bound()) : std::string();
}

}  // namespace

std::vector<TailBoundCurve> compute_bound_curves(const RunConfig& config) {
    for (BoundId id : config.bounds) check_bound_applicable(config, id);
    const std::vector<double> grid = config.r_grid.values();
    const StationaryModelSummary summary = config.summary();
    const GrainVolumeLaw law = config.effective_volume_law();

    std::optional<DiscreteMeasure> nu_star;
    const auto jumps = [&]() -> const DiscreteMeasure& {
        if (!nu_star) {
            nu_star = nu_star_stationary(*config.model, config.window, config.bound_options.nu_star_samples,
                                         stream_seed(config, SeedStream::kNuStar));
            if (nu_star->empty()) throw ConfigError("nu* discretization has no atoms meeting the window");
        }
        return *nu_star;
    };
    const auto jump_cap = [&] {
        const double largest = jumps().max_location();
        if (config.bound_options.a) {
            if (*config.bound_options.a < largest) throw ConfigError("bound_options.a is smaller than a nu* atom");
            return *config.bound_options.a;
        }
        return largest;
    };

    std::vector<TailBoundCurve> curves;
    for (BoundId id : config.bounds) {
        std::function<double(double)> fn;
        Validity validity;
        switch (id) {
            case BoundId::kNuStarChernoff: {
                const auto& nu = jumps();
                fn = [&nu](double r) { return log_nu_star_chernoff_bound(nu, SZero::infinite(), r); };
                break;
            }
            case BoundId::kInverseIntegral: {
                const auto& nu = jumps();
                validity.upper = h_left_limit(nu, SZero::infinite());
                fn = [&nu](double r) { return log_inverse_integral_bound(nu, SZero::infinite(), r); };
                break;
            }
            case BoundId::kBoundedMass:
            case BoundId::kBoundedFirstMoment:
            case BoundId::kBoundedSecondMoment: {
                const auto& nu = jumps();
                const double a = jump_cap();
                const int i = id == BoundId::kBoundedMass ? 0 : (id == BoundId::kBoundedFirstMoment ? 1 : 2);
                fn = [&nu, a, i](double r) { return log_bounded_moment_bound(nu, a, i, r); };
                break;
            }
            case BoundId::kVolumeMean:
            case BoundId::kVolumeSecondMoment: {
                const double a = config.bound_options.a.value_or(default_volume_cap(config));
                const auto variant = id == BoundId::kVolumeMean ? VolumeVariant::kMean : VolumeVariant::kSecondMoment;
                fn = [summary, a, variant](double r) { return log_bounded_volume_bound(summary, a, variant, r); };
                break;
            }
            case BoundId::kFixedGrain: {
                const double v = law.essential_max();
                fn = [summary, v](double r) { return log_fixed_grain_bound(summary, v, r); };
                break;
            }
            case BoundId::kWindowBound:
                fn = [summary](double r) { return log_window_bound(summary, r); };
                break;
            case BoundId::kVolumeLawInverse:
                fn = [summary, law](double r) { return log_volume_law_bound(summary, law, r); };
                break;
            case BoundId::kGammaLevyClosedForm: {
                const auto l = std::get<GammaLevyLaw>(law.variant());
                fn = [summary, l](double r) { return log_gamma_levy_closed_form_bound(l.alpha, l.beta, summary.c, r); };
                break;
            }
            case BoundId::kGammaClosedForm: {
                const auto* g = std::get_if<GammaLaw>(&law.variant());
                const double alpha = g ? g->alpha : 1.0;
                const double beta = g ? g->beta : std::get<ExponentialLaw>(law.variant()).beta;
                fn = [summary, alpha, beta](double r) { return log_gamma_closed_form_bound(alpha, beta, summary.c, r); };
                break;
            }
            case BoundId::kMeckeVolume:
                fn = [summary](double r) { return log_mecke_volume_bound(summary, r); };
                break;
            case BoundId::kMeckeGeneral: {
                const double a = config.bound_options.mecke_a.value_or(1.0 / summary.c);
                const double b = config.bound_options.mecke_b.value_or(0.0);
                fn = [summary, a, b](double r) { return log_mecke_bound(a, b, summary.mean_F, r); };
                break;
            }
        }
        curves.push_back(make_curve(id, fn, grid, validity));
    }
    return curves;
}

void write_bounds_table(std::ostream& out, std::span<const TailBoundCurve> curves, std::span<const double> r_grid) {
    out << 'r';
    for (const auto& c : curves) out << ',' << bound_code(c.id);
    out << ",best_bound,best_theorem\n";
    for (double r : r_grid) {
        out << exact_double(r);
        for (const auto& c : curves) out << ',' << cell(c, r);
        try {
            const BestBound best = best_bound(curves, r);
            out << ',' << exact_double(best.bound) << ',' << bound_code(best.id) << '\n';
        } catch (const std::invalid_argument&) {
            out << ",,\n";
        }
    }
}

std::vector<TailBoundCurve> cmd_bound(const RunConfig& config, const std::filesystem::path& out_dir) {
    if (config.bounds.empty()) throw ConfigError("bounds: the bound list is empty");
    auto curves = compute_bound_curves(config);
    for (const auto& c : curves) {
        auto out = open_output(out_dir, "bound_" + std::string(bound_code(c.id)) + ".csv");
        write_csv(out, c);
    }
    auto table = open_output(out_dir, "bounds.csv");
    write_bounds_table(table, curves, config.r_grid.values());
    return curves;
}

SimulationRun cmd_simulate(const RunConfig& config, const std::filesystem::path& out_dir, bool dump_realization) {
    check_simulatable(config);
    const BooleanModelSpec& spec = *config.model;
    const std::vector<double> grid = config.r_grid.values();
    SimulationOptions options;
    options.n_reps = config.simulation.n_reps;
    options.method = config.simulation.method;
    options.ci_level = config.simulation.ci_level;
    options.threads = config.simulation.threads;

    SimulationRun run;
    run.tail = estimate_tail(spec, config.window, grid, options, stream_seed(config, SeedStream::kTail));
    run.fraction = estimate_volume_fraction(spec, config.window, config.simulation.fraction_points,
                                            config.simulation.n_reps,
                                            stream_seed(config, SeedStream::kVolumeFraction), options.threads);

    auto tail_out = open_output(out_dir, "tail.csv");
    write_csv(tail_out, run.tail);

    const double gamma1 = spec.gamma1();
    const double simulated = spec.simulated_gamma1();
    nlohmann::ordered_json meta;
    meta["gamma1"] = gamma1;
    meta["gamma1_simulated"] = simulated;
    meta["truncation_bias_gamma1"] = gamma1 - simulated;
    meta["truncated"] = !spec.exact();
    meta["p"] = -std::expm1(-gamma1);
    meta["p_hat"] = run.fraction.p_hat;
    meta["p_hat_se"] = run.fraction.standard_error;
    meta["window_volume"] = config.window.volume();
    meta["mean_F_analytic"] = run.tail.mean_F_analytic;
    meta["mean_F_hat"] = run.tail.mean_F_hat;
    meta["se_mean"] = run.tail.se_mean;
    meta["mean_F_used"] = run.tail.mean_F_used;
    meta["n_reps"] = run.tail.n_reps;
    meta["ci_level"] = run.tail.ci_level;
    meta["seed"] = config.seed;
    if (!spec.exact()) {
        meta["note"] =
            "radius law truncated at its truncation_quantile; tails are centred at the empirical mean of F";
    }
    auto meta_out = open_output(out_dir, "metadata.json");
    meta_out << meta.dump(2) << '\n';

    if (dump_realization) {
        auto dump = open_output(out_dir, "realization.csv");
        write_realization_csv(dump, sample_realization(spec, config.window, stream_seed(config, SeedStream::kDump)));
    }
    return run;
}

CompareRun cmd_compare(const RunConfig& config, const std::filesystem::path& out_dir) {
    if (config.bounds.empty()) throw ConfigError("bounds: the bound list is empty");
    check_simulatable(config);
    CompareRun run;
    run.curves = cmd_bound(config, out_dir);
    run.simulation = cmd_simulate(config, out_dir);
    const TailEstimate& t = run.simulation.tail;

    auto out = open_output(out_dir, "compare.csv");
    out << "r,tail,ci_low,ci_high";
    for (const auto& c : run.curves) out << ',' << bound_code(c.id);
    out << ",best_bound,violation_flag\n";
    std::vector<std::string> violated;
    for (std::size_t j = 0; j < t.r_grid.size(); ++j) {
        const double r = t.r_grid[j];
        out << exact_double(r) << ',' << exact_double(t.tail[j]) << ',' << exact_double(t.ci_low[j]) << ','
            << exact_double(t.ci_high[j]);
        for (const auto& c : run.curves) out << ',' << cell(c, r);
        bool flag = false;
        try {
            const BestBound best = best_bound(run.curves, r);
            flag = t.ci_low[j] > best.bound;
            out << ',' << exact_double(best.bound);
            if (flag) violated.push_back(short_double(r) + " (" + std::string(bound_code(best.id)) + ")");
        } catch (const std::invalid_argument&) {
            out << ',';
        }
        out << ',' << (flag ? 1 : 0) << '\n';
    }
    run.violations = violated.size();

    auto summary = open_output(out_dir, "summary.txt");
    summary << "grid points: " << t.r_grid.size() << '\n'
            << "replications: " << t.n_reps << '\n'
            << "ci level: " << short_double(t.ci_level) << '\n'
            << "mean F: " << short_double(t.mean_F_hat) << " +- " << short_double(t.se_mean) << " (analytic "
            << short_double(t.mean_F_analytic) << ")\n"
            << "violations: " << run.violations << '\n';
    for (const auto& v : violated) summary << "  ci_low above bound at r = " << v << '\n';
    return run;
}

TestbedReport cmd_verify_identity(const RunConfig& config, const std::filesystem::path& out_dir) {
    if (config.testbed.battery.empty()) throw ConfigError("testbed.battery: the battery is empty");
    TestbedReport report = run_battery(config.testbed.battery, config.testbed.n_samples,
                                       stream_seed(config, SeedStream::kTestbed), config.simulation.threads);
    auto out = open_output(out_dir, "identity_checks.csv");
    write_csv(out, report);
    return report;
}

}  // namespace boolconc
