#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "boolconc/commands.hpp"
#include "boolconc/errors.hpp"

using namespace boolconc;

namespace fs = std::filesystem;

namespace {
const char* kReference = R"({
  "model": {"dimension": 1, "germ_intensity": 1.0, "grain": {"type": "fixed_interval", "length": 1.0}},
  "window": {"lower": [0.0], "upper": [10.0]},
  "r_grid": {"min": 0.1, "max": 3.6, "count": 6},
  "bounds": ["T3_5", "T3_7", "C3_8_i1", "C4_2_a", "C4_2_b", "R4_3", "E4_12", "C4_4", "P4_8", "T2_4"],
  "bound_options": {"nu_star_samples": 5000},
  "simulation": {"n_reps": 400, "ci_level": 0.998, "fraction_points": 100},
  "seed": 11
})";

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("boolconc_test_commands_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}
}  // namespace

TEST_CASE("bound command writes one file per bound and a merged table") {
    const RunConfig config = parse_config(kReference);
    const fs::path dir = scratch("bound");
    const auto curves = cmd_bound(config, dir);
    CHECK(curves.size() == config.bounds.size());
    for (BoundId id : config.bounds) CHECK(fs::exists(dir / ("bound_" + std::string(bound_code(id)) + ".csv")));
    CHECK(first_line(dir / "bounds.csv") == "r,T3_5,T3_7,C3_8_i1,C4_2_a,C4_2_b,R4_3,E4_12,C4_4,P4_8,T2_4,best_bound,best_theorem");
    CHECK(first_line(dir / "bound_P4_8.csv") == "r,bound,theorem_id");

    const std::string first = slurp(dir / "bounds.csv");
    cmd_bound(config, dir);
    CHECK(slurp(dir / "bounds.csv") == first);

    for (const TailBoundCurve& c : curves) {
        double prev = 1.0;
        for (const CurvePoint& p : c.points) {
            CHECK(p.bound() <= prev * (1.0 + 1e-9));
            prev = p.bound();
        }
    }
    // nu*-Chernoff and inverse-integral curves agree
    for (std::size_t k = 0; k < curves[0].points.size(); ++k)
        CHECK(curves[0].points[k].bound() == doctest::Approx(curves[1].points[k].bound()).epsilon(1e-8));
}

TEST_CASE("bound command rejects an empty bound list") {
    std::string text = kReference;
    const std::string list = R"(["T3_5", "T3_7", "C3_8_i1", "C4_2_a", "C4_2_b", "R4_3", "E4_12", "C4_4", "P4_8", "T2_4"])";
    text.replace(text.find(list), list.size(), "[]");
    CHECK_THROWS_AS(cmd_bound(parse_config(text), scratch("empty")), ConfigError);
}

TEST_CASE("simulate command is reproducible byte for byte") {
    const RunConfig config = parse_config(kReference);
    const fs::path a = scratch("sim_a");
    const fs::path b = scratch("sim_b");
    const SimulationRun run = cmd_simulate(config, a, true);
    cmd_simulate(config, b, true);
    for (const char* f : {"tail.csv", "metadata.json", "realization.csv"}) CHECK(slurp(a / f) == slurp(b / f));
    CHECK(first_line(a / "tail.csv") == "r,tail,ci_low,ci_high");
    CHECK(first_line(a / "realization.csv") == "x1,param");
    CHECK(slurp(a / "metadata.json").find("mean_F_hat") != std::string::npos);
    CHECK(run.tail.n_reps == 400);

    RunConfig other = config;
    other.seed = 12;
    const fs::path c = scratch("sim_c");
    cmd_simulate(other, c);
    CHECK(slurp(a / "tail.csv") != slurp(c / "tail.csv"));
}

TEST_CASE("simulate command needs a grain model") {
    const RunConfig config = parse_config(R"({
      "model": {"volume_law": {"type": "exponential", "beta": 1.0}},
      "window": {"lower": [0.0], "upper": [10.0]},
      "r_grid": {"min": 0.5, "max": 2.0}
    })");
    CHECK_THROWS_AS(cmd_simulate(config, scratch("law")), ConfigError);
}

TEST_CASE("compare command finds no violations on the reference model") {
    const RunConfig config = parse_config(kReference);
    const fs::path dir = scratch("compare");
    const CompareRun run = cmd_compare(config, dir);
    CHECK(run.violations == 0);
    CHECK(first_line(dir / "compare.csv") ==
          "r,tail,ci_low,ci_high,T3_5,T3_7,C3_8_i1,C4_2_a,C4_2_b,R4_3,E4_12,C4_4,P4_8,T2_4,best_bound,violation_flag");
    CHECK(slurp(dir / "summary.txt").find("violations: 0") != std::string::npos);
}

TEST_CASE("compare command flags a bound that is too small") {
    std::string text = kReference;
    const std::string opts = R"("nu_star_samples": 5000)";
    text.replace(text.find(opts), opts.size(), R"("nu_star_samples": 5000, "mecke_a": 0.01)");
    const RunConfig config = parse_config(text);
    const fs::path dir = scratch("violation");
    const CompareRun run = cmd_compare(config, dir);
    CHECK(run.violations > 0);
    CHECK(slurp(dir / "compare.csv").find(",1\n") != std::string::npos);
}

TEST_CASE("compare on a degenerate model has empty tails") {
    const RunConfig config = parse_config(R"({
      "model": {"dimension": 1, "germ_intensity": 1e-9, "grain": {"type": "fixed_interval", "length": 1.0}},
      "window": {"lower": [0.0], "upper": [10.0]},
      "r_grid": {"min": 0.5, "max": 2.0, "count": 3},
      "bounds": ["C4_2_a", "P4_8"],
      "simulation": {"n_reps": 100, "fraction_points": 10}
    })");
    const CompareRun run = cmd_compare(config, scratch("degenerate"));
    CHECK(run.violations == 0);
    for (double t : run.simulation.tail.tail) CHECK(t == 0.0);
}

TEST_CASE("verify-identity command") {
    RunConfig config = parse_config(R"({
      "model": {"volume_law": {"type": "point_mass", "volume": 1.0}},
      "window": {"lower": [0.0], "upper": [1.0]},
      "r_grid": {"min": 1.0, "max": 1.0, "count": 1},
      "testbed": {"n_samples": 5000, "battery": ["thinning", "mecke"]},
      "seed": 3
    })");
    const fs::path a = scratch("verify_a");
    const fs::path b = scratch("verify_b");
    const TestbedReport report = cmd_verify_identity(config, a);
    CHECK(report.all_passed());
    cmd_verify_identity(config, b);
    CHECK(slurp(a / "identity_checks.csv") == slurp(b / "identity_checks.csv"));
    config.testbed.battery.clear();
    CHECK_THROWS_AS(cmd_verify_identity(config, scratch("verify_empty")), ConfigError);
}
