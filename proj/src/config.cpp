#include "boolconc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>

#include "boolconc/errors.hpp"

namespace boolconc {
namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
    return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::size_t count_or(const json& obj, const char* key, std::size_t fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError(where + "." + key + ": expected a nonnegative integer");
    return v.get<std::size_t>();
}

std::string text(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError(where + ": expected an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

// --- radius and volume laws ------------------------------------------------

RadiusLaw parse_radius_law(const json& j) {
    const std::string where = "model.grain.radius_law";
    const std::string type = text(j, "type", where);
    if (type == "exponential") {
        check_keys(j, {"type", "rate"}, where);
        return ExponentialRadius{number(j, "rate", where)};
    }
    if (type == "gamma") {
        check_keys(j, {"type", "shape", "rate"}, where);
        return GammaRadius{number(j, "shape", where), number(j, "rate", where)};
    }
    if (type == "uniform") {
        check_keys(j, {"type", "min", "max"}, where);
        return UniformRadius{number(j, "min", where), number(j, "max", where)};
    }
    throw ConfigError(where + ": unknown type '" + type + "'");
}

json radius_law_json(const RadiusLaw& law) {
    if (const auto* e = std::get_if<ExponentialRadius>(&law)) return {{"type", "exponential"}, {"rate", e->rate}};
    if (const auto* g = std::get_if<GammaRadius>(&law)) return {{"type", "gamma"}, {"shape", g->shape}, {"rate", g->rate}};
    const auto& u = std::get<UniformRadius>(law);
    return {{"type", "uniform"}, {"min", u.min}, {"max", u.max}};
}

GrainModel parse_grain(const json& j) {
    const std::string where = "model.grain";
    const std::string type = text(j, "type", where);
    if (type == "fixed_interval") {
        check_keys(j, {"type", "length"}, where);
        return FixedInterval{number(j, "length", where)};
    }
    if (type == "fixed_ball") {
        check_keys(j, {"type", "radius"}, where);
        return FixedBall{number(j, "radius", where)};
    }
    if (type == "fixed_box") {
        check_keys(j, {"type", "sides"}, where);
        return FixedBox{numbers(require(j, "sides", where), where + ".sides")};
    }
    if (type == "random_ball") {
        check_keys(j, {"type", "radius_law", "truncation_quantile"}, where);
        return RandomBall{parse_radius_law(require(j, "radius_law", where)),
                          number_or(j, "truncation_quantile", kDefaultTruncationQuantile, where)};
    }
    throw ConfigError(where + ": unknown type '" + type + "'");
}

json grain_json(const GrainModel& grain) {
    return std::visit(
        [](const auto& g) -> json {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, FixedInterval>) {
                return {{"type", "fixed_interval"}, {"length", g.length}};
            } else if constexpr (std::is_same_v<T, FixedBall>) {
                return {{"type", "fixed_ball"}, {"radius", g.radius}};
            } else if constexpr (std::is_same_v<T, FixedBox>) {
                return {{"type", "fixed_box"}, {"sides", g.sides}};
            } else {
                return {{"type", "random_ball"},
                        {"radius_law", radius_law_json(g.radius_law)},
                        {"truncation_quantile", g.truncation_quantile}};
            }
        },
        grain);
}

GrainVolumeLaw parse_volume_law(const json& j) {
    const std::string where = "model.volume_law";
    const std::string type = text(j, "type", where);
    const auto positive = [&](const char* key) {
        const double v = number(j, key, where);
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(where + "." + key + ": must be finite and > 0");
        return v;
    };
    if (type == "point_mass") {
        check_keys(j, {"type", "volume"}, where);
        return PointMassLaw{positive("volume")};
    }
    if (type == "gamma") {
        check_keys(j, {"type", "alpha", "beta"}, where);
        return GammaLaw{positive("alpha"), positive("beta")};
    }
    if (type == "gamma_levy") {
        check_keys(j, {"type", "alpha", "beta"}, where);
        return GammaLevyLaw{positive("alpha"), positive("beta")};
    }
    if (type == "exponential") {
        check_keys(j, {"type", "beta"}, where);
        return ExponentialLaw{positive("beta")};
    }
    if (type == "empirical") {
        check_keys(j, {"type", "atoms"}, where);
        const json& atoms = require(j, "atoms", where);
        if (!atoms.is_array()) throw ConfigError(where + ".atoms: expected an array of [u, w] pairs");
        std::vector<Atom> list;
        for (const auto& a : atoms) {
            const auto pair = numbers(a, where + ".atoms");
            if (pair.size() != 2) throw ConfigError(where + ".atoms: expected [u, w] pairs");
            list.push_back({pair[0], pair[1]});
        }
        try {
            DiscreteMeasure m(std::move(list));
            if (m.empty()) throw ConfigError(where + ".atoms: the law has no mass");
            return EmpiricalLaw{std::move(m)};
        } catch (const std::invalid_argument& e) {
            throw ConfigError(where + ".atoms: " + e.what());
        }
    }
    throw ConfigError(where + ": unknown type '" + type + "'");
}

json volume_law_json(const GrainVolumeLaw& law) {
    return std::visit(
        [](const auto& l) -> json {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, PointMassLaw>) {
                return {{"type", "point_mass"}, {"volume", l.volume}};
            } else if constexpr (std::is_same_v<T, GammaLaw>) {
                return {{"type", "gamma"}, {"alpha", l.alpha}, {"beta", l.beta}};
            } else if constexpr (std::is_same_v<T, GammaLevyLaw>) {
                return {{"type", "gamma_levy"}, {"alpha", l.alpha}, {"beta", l.beta}};
            } else if constexpr (std::is_same_v<T, ExponentialLaw>) {
                return {{"type", "exponential"}, {"beta", l.beta}};
            } else {
                json atoms = json::array();
                for (const auto& a : l.measure.atoms()) atoms.push_back({a.u, a.w});
                return {{"type", "empirical"}, {"atoms", atoms}};
            }
        },
        law.variant());
}

// --- small enums -------------------------------------------------------------

VolumeMethodKind parse_method(const std::string& s) {
    if (s == "exact_1d") return VolumeMethodKind::kExact1d;
    if (s == "grid") return VolumeMethodKind::kGrid;
    if (s == "quasi_mc") return VolumeMethodKind::kQuasiMc;
    throw ConfigError("simulation.volume_method: expected exact_1d, grid or quasi_mc, got '" + s + "'");
}

std::string method_name(VolumeMethodKind k) {
    switch (k) {
        case VolumeMethodKind::kExact1d: return "exact_1d";
        case VolumeMethodKind::kGrid: return "grid";
        case VolumeMethodKind::kQuasiMc: return "quasi_mc";
    }
    return "exact_1d";
}

// --- validation ------------------------------------------------------------

void validate(const RunConfig& c) {
    const RGridSpec& g = c.r_grid;
    if (!(g.min > 0.0) || !std::isfinite(g.max) || !(g.max >= g.min))
        throw ConfigError("r_grid: need 0 < min <= max < inf");
    if (g.count == 0) throw ConfigError("r_grid.count: must be >= 1");
    if (g.count == 1 && g.max != g.min) throw ConfigError("r_grid: a single point needs min == max");
    if (g.count > 1 && !(g.max > g.min)) throw ConfigError("r_grid: max must exceed min");

    const SimulationConfig& s = c.simulation;
    if (s.n_reps < 100) throw ConfigError("simulation.n_reps: must be >= 100");
    if (!(s.ci_level > 0.5 && s.ci_level < 1.0)) throw ConfigError("simulation.ci_level: must lie in (0.5, 1)");
    if (s.method.kind != VolumeMethodKind::kExact1d && s.method.n_points == 0)
        throw ConfigError("simulation.n_points: point methods need n_points > 0");
    if (s.method.kind == VolumeMethodKind::kExact1d && c.window.dimension() != 1)
        throw ConfigError("simulation.volume_method: exact_1d requires dimension 1");
    if (s.fraction_points == 0) throw ConfigError("simulation.fraction_points: must be > 0");

    if (c.testbed.n_samples < 2) throw ConfigError("testbed.n_samples: must be >= 2");
    if (c.bound_options.nu_star_samples == 0) throw ConfigError("bound_options.nu_star_samples: must be > 0");
    if (c.bound_options.a && !(*c.bound_options.a > 0.0)) throw ConfigError("bound_options.a: must be > 0");
    if (c.bound_options.mecke_a && !(*c.bound_options.mecke_a > 0.0))
        throw ConfigError("bound_options.mecke_a: must be > 0");
    if (c.bound_options.mecke_b && !(*c.bound_options.mecke_b >= 0.0))
        throw ConfigError("bound_options.mecke_b: must be >= 0");

    for (BoundId id : c.bounds) check_bound_applicable(c, id);
}

}  // namespace

std::vector<double> RGridSpec::values() const {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out[i] = spacing == Spacing::kLinear ? min + t * (max - min) : min * std::pow(max / min, t);
    }
    if (count > 1) out.back() = max;
    return out;
}

GrainVolumeLaw RunConfig::effective_volume_law() const {
    if (volume_law) return *volume_law;
    if (!model) throw ConfigError("config has neither a grain model nor a volume law");
    return model->volume_law();
}

StationaryModelSummary RunConfig::summary() const {
    if (model) return StationaryModelSummary::from_moments(model->gamma1(), model->gamma2(), window.volume());
    return StationaryModelSummary::from_law(effective_volume_law(), window.volume());
}

void check_bound_applicable(const RunConfig& c, BoundId id) {
    const std::string code(bound_code(id));
    const auto fail = [&](const std::string& why) { throw ConfigError("bound " + code + " not applicable: " + why); };
    switch (id) {
        case BoundId::kNuStarChernoff:
        case BoundId::kInverseIntegral:
        case BoundId::kBoundedMass:
        case BoundId::kBoundedFirstMoment:
        case BoundId::kBoundedSecondMoment:
            if (!c.model) fail("nu* is discretized from a grain model, and this config only gives a volume law");
            break;
        case BoundId::kFixedGrain:
            if (!c.effective_volume_law().is_deterministic()) fail("the grain volume is not deterministic");
            break;
        case BoundId::kVolumeSecondMoment:
            if (!std::isfinite(c.summary().gamma2)) fail("gamma_2 is infinite");
            break;
        case BoundId::kGammaLevyClosedForm:
            if (!std::holds_alternative<GammaLevyLaw>(c.effective_volume_law().variant()))
                fail("needs a gamma_levy volume law");
            break;
        case BoundId::kGammaClosedForm: {
            const auto& v = c.effective_volume_law().variant();
            if (!std::holds_alternative<GammaLaw>(v) && !std::holds_alternative<ExponentialLaw>(v))
                fail("needs a gamma or exponential volume law");
            break;
        }
        case BoundId::kVolumeMean:
        case BoundId::kWindowBound:
        case BoundId::kVolumeLawInverse:
        case BoundId::kMeckeVolume:
        case BoundId::kMeckeGeneral:
            break;
    }
    if (c.bound_options.a && (id == BoundId::kVolumeMean || id == BoundId::kVolumeSecondMoment)) {
        const double ess = c.effective_volume_law().essential_max();
        if (*c.bound_options.a < std::min(ess, c.window.volume()))
            fail("bound_options.a is smaller than the largest possible vol(K ∩ W)");
    }
}

void check_simulatable(const RunConfig& c) {
    if (!c.model) throw ConfigError("simulation needs a grain model; volume_law configs are bounds-only");
    if (c.model->dimension != c.window.dimension())
        throw ConfigError("model.dimension does not match the window dimension");
}

RunConfig parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(root, {"model", "window", "r_grid", "bounds", "bound_options", "simulation", "testbed", "seed",
                      "output_dir"},
               "config");
    RunConfig c;
    try {
        const json& w = require(root, "window", "config");
        check_keys(w, {"lower", "upper"}, "window");
        c.window = Window(numbers(require(w, "lower", "window"), "window.lower"),
                          numbers(require(w, "upper", "window"), "window.upper"));

        const json& m = require(root, "model", "config");
        check_keys(m, {"dimension", "germ_intensity", "grain", "volume_law"}, "model");
        if (m.contains("volume_law")) {
            if (m.contains("grain") || m.contains("germ_intensity") || m.contains("dimension"))
                throw ConfigError("model: give either volume_law alone or dimension/germ_intensity/grain");
            c.volume_law = parse_volume_law(m.at("volume_law"));
        } else {
            BooleanModelSpec spec;
            const json& d = require(m, "dimension", "model");
            if (!d.is_number_integer()) throw ConfigError("model.dimension: expected an integer");
            spec.dimension = d.get<int>();
            spec.germ_intensity = number(m, "germ_intensity", "model");
            spec.grain = parse_grain(require(m, "grain", "model"));
            spec.validate();
            if (spec.dimension != c.window.dimension())
                throw ConfigError("model.dimension does not match the window dimension");
            c.model = spec;
        }

        const json& g = require(root, "r_grid", "config");
        check_keys(g, {"min", "max", "count", "spacing"}, "r_grid");
        c.r_grid.min = number(g, "min", "r_grid");
        c.r_grid.max = number(g, "max", "r_grid");
        c.r_grid.count = count_or(g, "count", 10, "r_grid");
        const std::string spacing = g.contains("spacing") ? text(g, "spacing", "r_grid") : "linear";
        if (spacing == "linear") {
            c.r_grid.spacing = RGridSpec::Spacing::kLinear;
        } else if (spacing == "log") {
            c.r_grid.spacing = RGridSpec::Spacing::kLog;
        } else {
            throw ConfigError("r_grid.spacing: expected linear or log");
        }

        if (root.contains("bounds")) {
            const json& b = root.at("bounds");
            if (!b.is_array()) throw ConfigError("bounds: expected an array of bound codes");
            for (const auto& code : b) {
                if (!code.is_string()) throw ConfigError("bounds: expected an array of bound codes");
                try {
                    const BoundId id = parse_bound_code(code.get<std::string>());
                    if (std::find(c.bounds.begin(), c.bounds.end(), id) != c.bounds.end())
                        throw ConfigError("bounds: duplicate code " + code.get<std::string>());
                    c.bounds.push_back(id);
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(std::string("bounds: ") + e.what());
                }
            }
        }

        if (root.contains("bound_options")) {
            const json& o = root.at("bound_options");
            check_keys(o, {"a", "mecke_a", "mecke_b", "nu_star_samples"}, "bound_options");
            if (o.contains("a")) c.bound_options.a = number(o, "a", "bound_options");
            if (o.contains("mecke_a")) c.bound_options.mecke_a = number(o, "mecke_a", "bound_options");
            if (o.contains("mecke_b")) c.bound_options.mecke_b = number(o, "mecke_b", "bound_options");
            c.bound_options.nu_star_samples =
                count_or(o, "nu_star_samples", c.bound_options.nu_star_samples, "bound_options");
        }

        const bool one_d = c.window.dimension() == 1;
        c.simulation.method = one_d ? VolumeMethod::exact_1d() : VolumeMethod::quasi_mc(16384);
        if (root.contains("simulation")) {
            const json& s = root.at("simulation");
            check_keys(s, {"n_reps", "volume_method", "n_points", "fraction_points", "ci_level", "threads"},
                       "simulation");
            c.simulation.n_reps = count_or(s, "n_reps", c.simulation.n_reps, "simulation");
            if (s.contains("volume_method")) c.simulation.method.kind = parse_method(text(s, "volume_method", "simulation"));
            c.simulation.method.n_points = count_or(s, "n_points", c.simulation.method.n_points, "simulation");
            if (c.simulation.method.kind == VolumeMethodKind::kExact1d) c.simulation.method.n_points = 0;
            c.simulation.fraction_points = count_or(s, "fraction_points", c.simulation.fraction_points, "simulation");
            c.simulation.ci_level = number_or(s, "ci_level", c.simulation.ci_level, "simulation");
            c.simulation.threads = static_cast<unsigned>(count_or(s, "threads", 0, "simulation"));
        }

        if (root.contains("testbed")) {
            const json& t = root.at("testbed");
            check_keys(t, {"n_samples", "battery"}, "testbed");
            c.testbed.n_samples = count_or(t, "n_samples", c.testbed.n_samples, "testbed");
            if (t.contains("battery")) {
                const json& b = t.at("battery");
                if (!b.is_array()) throw ConfigError("testbed.battery: expected an array of group names");
                c.testbed.battery.clear();
                for (const auto& name : b) {
                    if (!name.is_string()) throw ConfigError("testbed.battery: expected an array of group names");
                    c.testbed.battery.push_back(parse_battery_group(name.get<std::string>()));
                }
            }
        }

        if (root.contains("seed")) {
            const json& s = root.at("seed");
            if (!s.is_number_unsigned()) throw ConfigError("seed: expected a nonnegative integer");
            c.seed = s.get<std::uint64_t>();
        }
        if (root.contains("output_dir")) c.output_dir = text(root, "output_dir", "config");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const RunConfig& c) {
    json root;
    json model;
    if (c.model) {
        model["dimension"] = c.model->dimension;
        model["germ_intensity"] = c.model->germ_intensity;
        model["grain"] = grain_json(c.model->grain);
    } else if (c.volume_law) {
        model["volume_law"] = volume_law_json(*c.volume_law);
    }
    root["model"] = model;
    const int d = c.window.dimension();
    root["window"] = {{"lower", std::vector<double>(c.window.lower().begin(), c.window.lower().begin() + d)},
                      {"upper", std::vector<double>(c.window.upper().begin(), c.window.upper().begin() + d)}};
    root["r_grid"] = {{"min", c.r_grid.min},
                      {"max", c.r_grid.max},
                      {"count", c.r_grid.count},
                      {"spacing", c.r_grid.spacing == RGridSpec::Spacing::kLinear ? "linear" : "log"}};
    json bounds = json::array();
    for (BoundId id : c.bounds) bounds.push_back(std::string(bound_code(id)));
    root["bounds"] = bounds;
    json options = {{"nu_star_samples", c.bound_options.nu_star_samples}};
    if (c.bound_options.a) options["a"] = *c.bound_options.a;
    if (c.bound_options.mecke_a) options["mecke_a"] = *c.bound_options.mecke_a;
    if (c.bound_options.mecke_b) options["mecke_b"] = *c.bound_options.mecke_b;
    root["bound_options"] = options;
    root["simulation"] = {{"n_reps", c.simulation.n_reps},
                          {"volume_method", method_name(c.simulation.method.kind)},
                          {"n_points", c.simulation.method.n_points},
                          {"fraction_points", c.simulation.fraction_points},
                          {"ci_level", c.simulation.ci_level},
                          {"threads", c.simulation.threads}};
    json battery = json::array();
    for (auto g : c.testbed.battery) battery.push_back(std::string(battery_group_name(g)));
    root["testbed"] = {{"n_samples", c.testbed.n_samples}, {"battery", battery}};
    root["seed"] = c.seed;
    root["output_dir"] = c.output_dir;
    return root.dump(2) + "\n";
}

}  // namespace boolconc
