#include "boolconc/testbed.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "boolconc/bounds.hpp"
#include "boolconc/stats.hpp"
#include "csv_util.hpp"
#include "parallel.hpp"

namespace boolconc {
namespace {

constexpr std::size_t kBatchSize = 1024;

// Runs body(i, rng) for i in [0, n) with one derived stream per batch.
template <class Body>
void for_each_sample(std::size_t n, std::uint64_t seed, unsigned threads, Body&& body) {
    const std::size_t batches = (n + kBatchSize - 1) / kBatchSize;
    parallel_for(batches, threads, [&](std::size_t b) {
        Rng rng(derive_seed(seed, b));
        const std::size_t end = std::min(n, (b + 1) * kBatchSize);
        for (std::size_t i = b * kBatchSize; i < end; ++i) body(i, rng);
    });
}

// Estimates int_0^1 E[D_x g(eta_t + mu)] dt for every x with one draw per
// stratum of t.
std::vector<double> thinned_difference_integral(const Functional& g, const FiniteSpace& space,
                                                const CountVector& eta, Rng& rng) {
    const std::size_t n = space.size();
    std::vector<double> integral(n, 0.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t j = 0; j < kThinningStrata; ++j) {
        const double t = (static_cast<double>(j) + unit(rng)) / static_cast<double>(kThinningStrata);
        CountVector xi = t_thinning(eta, t, rng);
        for (std::size_t i = 0; i < n; ++i) {
            const double mean = (1.0 - t) * space.lambda(i);
            if (mean > 0.0) xi[i] += std::poisson_distribution<int>(mean)(rng);
        }
        for (std::size_t x = 0; x < n; ++x) integral[x] += g.difference(xi, x);
    }
    for (double& v : integral) v /= static_cast<double>(kThinningStrata);
    return integral;
}

// log of the sample mean of exp(values) and its delta-method standard error.
MeanEstimate log_mean_exp(std::span<const double> values) {
    const double shift = *std::max_element(values.begin(), values.end());
    std::vector<double> e(values.size());
    std::transform(values.begin(), values.end(), e.begin(), [shift](double v) { return std::exp(v - shift); });
    const MeanEstimate m = mean_and_se(e);
    return {shift + std::log(m.mean), m.standard_error / m.mean};
}

CheckRow make_row(std::string name, double statistic, double threshold) {
    return {std::move(name), statistic, threshold, statistic <= threshold};
}

}  // namespace

FiniteSpace::FiniteSpace(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty() || lambdas_.size() > kMaxFiniteSpacePoints)
        throw std::invalid_argument("FiniteSpace: need between 1 and 12 points");
    for (double l : lambdas_)
        if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("FiniteSpace: intensities must be finite and > 0");
}

double FiniteSpace::total() const noexcept { return std::accumulate(lambdas_.begin(), lambdas_.end(), 0.0); }

CountVector sample_poisson(const FiniteSpace& space, Rng& rng) {
    CountVector mu(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) mu[i] = std::poisson_distribution<int>(space.lambda(i))(rng);
    return mu;
}

CountVector sample_poisson(const FiniteSpace& space, std::uint64_t seed) {
    Rng rng(seed);
    return sample_poisson(space, rng);
}

CountVector t_thinning(const CountVector& mu, double t, Rng& rng) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("t_thinning: t must lie in [0, 1]");
    CountVector out(mu.size(), 0);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] < 0) throw std::invalid_argument("t_thinning: negative count");
        if (t == 1.0) {
            out[i] = mu[i];
        } else if (t > 0.0 && mu[i] > 0) {
            out[i] = std::binomial_distribution<int>(mu[i], t)(rng);
        }
    }
    return out;
}

CountVector t_thinning(const CountVector& mu, double t, std::uint64_t seed) {
    Rng rng(seed);
    return t_thinning(mu, t, rng);
}

double Functional::difference(const CountVector& mu, std::size_t x) const {
    CountVector plus = mu;
    ++plus.at(x);
    return eval(plus) - eval(mu);
}

namespace functionals {

Functional constant(double c) {
    return {"constant", [c](std::span<const int>) { return c; }};
}

Functional total_count() {
    return {"total_count", [](std::span<const int> mu) { return static_cast<double>(std::accumulate(mu.begin(), mu.end(), 0)); }};
}

Functional linear(std::vector<double> weights) {
    return {"linear", [w = std::move(weights)](std::span<const int> mu) {
                if (mu.size() != w.size()) throw std::invalid_argument("linear functional: size mismatch");
                double s = 0.0;
                for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * mu[i];
                return s;
            }};
}

Functional occupied(std::size_t i) {
    return {"occupied", [i](std::span<const int> mu) { return mu[i] > 0 ? 1.0 : 0.0; }};
}

Functional at_least(std::size_t i, int k) {
    return {"at_least", [i, k](std::span<const int> mu) { return mu[i] >= k ? 1.0 : 0.0; }};
}

Functional capped_product(std::size_t i, std::size_t j, double cap) {
    return {"capped_product",
            [i, j, cap](std::span<const int> mu) { return std::min(static_cast<double>(mu[i]) * mu[j], cap); }};
}

Functional capped_max(double cap) {
    return {"capped_max", [cap](std::span<const int> mu) {
                return std::min(static_cast<double>(*std::max_element(mu.begin(), mu.end())), cap);
            }};
}

}  // namespace functionals

CovarianceCheck covariance_identity_check(const Functional& f, const Functional& g, const FiniteSpace& space,
                                          std::size_t n_samples, std::uint64_t seed, unsigned threads) {
    if (n_samples < 2) throw std::invalid_argument("covariance_identity_check: need at least 2 samples");
    std::vector<double> fs(n_samples);
    std::vector<double> gs(n_samples);
    std::vector<double> rs(n_samples);
    for_each_sample(n_samples, seed, threads, [&](std::size_t i, Rng& rng) {
        const CountVector eta = sample_poisson(space, rng);
        fs[i] = f(eta);
        gs[i] = g(eta);
        const auto inner = thinned_difference_integral(g, space, eta, rng);
        double r = 0.0;
        for (std::size_t x = 0; x < space.size(); ++x) {
            const double df = f.difference(eta, x);
            if (df != 0.0) r += space.lambda(x) * df * inner[x];
        }
        rs[i] = r;
    });
    const double f_bar = mean_and_se(fs).mean;
    const double g_bar = mean_and_se(gs).mean;
    std::vector<double> products(n_samples);
    std::vector<double> diffs(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        products[i] = (fs[i] - f_bar) * (gs[i] - g_bar);
        diffs[i] = products[i] - rs[i];
    }
    const MeanEstimate lhs = mean_and_se(products);
    const MeanEstimate rhs = mean_and_se(rs);
    const MeanEstimate d = mean_and_se(diffs);
    CovarianceCheck out{lhs.mean, lhs.standard_error, rhs.mean, rhs.standard_error, 0.0};
    if (d.standard_error > 0.0) {
        out.z = d.mean / d.standard_error;
    } else if (std::abs(d.mean) > 1e-12 * (1.0 + std::abs(lhs.mean))) {
        out.z = std::copysign(std::numeric_limits<double>::infinity(), d.mean);
    }
    return out;
}

CumulantCheck cumulant_bound_check(const Functional& f, const FiniteSpace& space, double s, double theta,
                                   std::size_t n_samples, std::uint64_t seed, unsigned threads) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("cumulant_bound_check: s must be > 0");
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("cumulant_bound_check: theta must lie in (0, 1)");
    if (n_samples < 2) throw std::invalid_argument("cumulant_bound_check: need at least 2 samples");
    const std::size_t n = space.size();
    std::vector<double> fs(n_samples);
    std::vector<double> dfs(n_samples * n);
    std::vector<double> inners(n_samples * n);
    for_each_sample(n_samples, seed, threads, [&](std::size_t i, Rng& rng) {
        const CountVector eta = sample_poisson(space, rng);
        fs[i] = f(eta);
        const auto inner = thinned_difference_integral(f, space, eta, rng);
        for (std::size_t x = 0; x < n; ++x) {
            dfs[i * n + x] = f.difference(eta, x);
            inners[i * n + x] = inner[x];
        }
    });

    const double f_bar = mean_and_se(fs).mean;
    std::vector<double> work(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) work[i] = s * (fs[i] - f_bar);
    const MeanEstimate lhs = log_mean_exp(work);

    const auto log_mgf_of_v = [&](double u) {
        for (std::size_t i = 0; i < n_samples; ++i) {
            double v = 0.0;
            for (std::size_t x = 0; x < n; ++x)
                v += space.lambda(x) * std::expm1(u * dfs[i * n + x]) * inners[i * n + x];
            work[i] = s * v / theta;
        }
        return log_mean_exp(work);
    };
    using Rule = boost::math::quadrature::gauss<double, 16>;
    const double scale = theta / (s * (1.0 - theta));
    const double rhs = scale * Rule::integrate([&](double u) { return log_mgf_of_v(u).mean; }, 0.0, s);
    const double rhs_se = scale * Rule::integrate([&](double u) { return log_mgf_of_v(u).standard_error; }, 0.0, s);

    CumulantCheck out;
    out.lhs = lhs.mean;
    out.rhs = rhs;
    out.se = std::hypot(lhs.standard_error, rhs_se);
    out.pass = out.lhs <= out.rhs + 3.0 * out.se;
    return out;
}

MeckeCheck mecke_bound_check(const FiniteSpace& space, std::span<const double> g_weights,
                             std::span<const double> r_grid, std::size_t n_samples, std::uint64_t seed,
                             double ci_level) {
    if (g_weights.size() != space.size()) throw std::invalid_argument("mecke_bound_check: one weight per point needed");
    double a = 0.0;
    double mean_F = 0.0;
    for (std::size_t i = 0; i < g_weights.size(); ++i) {
        if (!(g_weights[i] >= 0.0) || !std::isfinite(g_weights[i]))
            throw std::invalid_argument("mecke_bound_check: weights must be finite and >= 0");
        a = std::max(a, g_weights[i]);
        mean_F += g_weights[i] * space.lambda(i);
    }
    if (!(a > 0.0)) throw std::invalid_argument("mecke_bound_check: at least one weight must be > 0");
    if (n_samples == 0) throw std::invalid_argument("mecke_bound_check: n_samples must be > 0");

    std::vector<double> fs(n_samples);
    for_each_sample(n_samples, seed, 0, [&](std::size_t i, Rng& rng) {
        const CountVector eta = sample_poisson(space, rng);
        double v = 0.0;
        for (std::size_t x = 0; x < eta.size(); ++x) v += g_weights[x] * eta[x];
        fs[i] = v;
    });

    MeckeCheck out;
    out.pass = true;
    for (double r : r_grid) {
        if (!(r > 0.0)) throw std::invalid_argument("mecke_bound_check: r must be > 0");
        const auto k = static_cast<std::size_t>(
            std::count_if(fs.begin(), fs.end(), [&](double v) { return v - mean_F >= r; }));
        const auto ci = clopper_pearson(k, n_samples, ci_level);
        const double bound = mecke_bound(a, 0.0, mean_F, r);
        out.r_grid.push_back(r);
        out.tail.push_back(static_cast<double>(k) / static_cast<double>(n_samples));
        out.ci_low.push_back(ci.low);
        out.bound.push_back(bound);
        if (ci.low > bound) out.pass = false;
    }
    return out;
}

bool TestbedReport::all_passed() const noexcept {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

void write_csv(std::ostream& out, const TestbedReport& report) {
    out << "check_name,statistic,threshold,pass\n";
    for (const auto& row : report.rows) {
        out << row.check_name << ',' << exact_double(row.statistic) << ',' << exact_double(row.threshold) << ','
            << (row.pass ? "true" : "false") << '\n';
    }
}

std::string_view battery_group_name(BatteryGroup g) {
    switch (g) {
        case BatteryGroup::kThinning: return "thinning";
        case BatteryGroup::kCovariance: return "covariance";
        case BatteryGroup::kCumulant: return "cumulant";
        case BatteryGroup::kMecke: return "mecke";
    }
    return "unknown";
}

BatteryGroup parse_battery_group(std::string_view name) {
    for (auto g : default_battery())
        if (battery_group_name(g) == name) return g;
    throw std::invalid_argument("unknown battery group '" + std::string(name) + "'");
}

std::vector<BatteryGroup> default_battery() {
    return {BatteryGroup::kThinning, BatteryGroup::kCovariance, BatteryGroup::kCumulant, BatteryGroup::kMecke};
}

TestbedReport run_battery(std::span<const BatteryGroup> groups, std::size_t n_samples, std::uint64_t seed,
                          unsigned threads) {
    if (groups.empty()) throw std::invalid_argument("verification battery is empty");
    using namespace functionals;
    TestbedReport report;
    std::uint64_t stream = 0;
    const auto next_seed = [&] { return derive_seed(seed, stream++); };

    for (auto group : groups) {
        switch (group) {
            case BatteryGroup::kThinning: {
                const FiniteSpace space({4.0});
                const double t = 0.5;
                std::vector<double> kept(n_samples);
                std::vector<double> removed(n_samples);
                for_each_sample(n_samples, next_seed(), threads, [&](std::size_t i, Rng& rng) {
                    const CountVector eta = sample_poisson(space, rng);
                    const CountVector thin = t_thinning(eta, t, rng);
                    kept[i] = thin[0];
                    removed[i] = eta[0] - thin[0];
                });
                const MeanEstimate k = mean_and_se(kept);
                const MeanEstimate r = mean_and_se(removed);
                std::vector<double> cross(n_samples);
                for (std::size_t i = 0; i < n_samples; ++i) cross[i] = (kept[i] - k.mean) * (removed[i] - r.mean);
                const MeanEstimate c = mean_and_se(cross);
                report.rows.push_back(make_row("thinning_kept_mean", std::abs(k.mean - 2.0) / k.standard_error, 3.0));
                report.rows.push_back(make_row("thinning_removed_mean", std::abs(r.mean - 2.0) / r.standard_error, 3.0));
                report.rows.push_back(make_row("thinning_covariance", std::abs(c.mean) / c.standard_error, 3.0));
                break;
            }
            case BatteryGroup::kCovariance: {
                struct Case {
                    std::string name;
                    Functional f;
                    Functional g;
                    std::vector<double> lambdas;
                };
                const std::vector<Case> cases{
                    {"cov_total_count_single", total_count(), total_count(), {2.0}},
                    {"cov_constant", constant(1.0), total_count(), {1.5, 0.5}},
                    {"cov_occupied_single", occupied(0), occupied(0), {1.0}},
                    {"cov_total_vs_at_least", total_count(), at_least(1, 2), {1.0, 0.5, 2.0}},
                    {"cov_capped_product", capped_product(0, 1, 4.0), capped_product(0, 1, 4.0), {1.5, 0.7}},
                    {"cov_capped_max_vs_linear", capped_max(5.0), linear({1.0, 2.0, 0.5, 1.0}), {0.8, 1.2, 0.3, 2.0}},
                };
                for (const auto& c : cases) {
                    const auto res = covariance_identity_check(c.f, c.g, FiniteSpace(c.lambdas), n_samples, next_seed(), threads);
                    report.rows.push_back(make_row(c.name, std::abs(res.z), 4.0));
                    if (c.name == "cov_total_count_single") {
                        report.rows.push_back(make_row("cov_linear_analytic", std::abs(res.lhs - 2.0) / res.lhs_se, 3.0));
                    }
                }
                break;
            }
            case BatteryGroup::kCumulant: {
                struct Case {
                    std::string name;
                    Functional f;
                    std::vector<double> lambdas;
                    double s;
                    double theta;
                };
                const std::vector<Case> cases{
                    {"cumulant_linear_single", total_count(), {1.0}, 0.5, 0.5},
                    {"cumulant_total_three", total_count(), {1.0, 1.0, 1.0}, 0.3, 0.5},
                    {"cumulant_capped_product", capped_product(0, 1, 4.0), {1.5, 0.7}, 0.4, 0.5},
                };
                for (const auto& c : cases) {
                    const auto res = cumulant_bound_check(c.f, FiniteSpace(c.lambdas), c.s, c.theta, n_samples, next_seed(), threads);
                    report.rows.push_back(make_row(c.name, res.lhs - res.rhs, 3.0 * res.se));
                }
                break;
            }
            case BatteryGroup::kMecke: {
                struct Case {
                    std::string name;
                    std::vector<double> lambdas;
                    std::vector<double> weights;
                    std::vector<double> r_grid;
                };
                const std::vector<Case> cases{
                    {"mecke_unit", {1.0}, {1.0}, {0.5, 1.0, 2.0, 3.0, 4.0}},
                    {"mecke_weighted", {1.0, 0.5}, {1.0, 2.0}, {0.5, 1.0, 2.0, 3.0, 5.0}},
                };
                for (const auto& c : cases) {
                    const auto res = mecke_bound_check(FiniteSpace(c.lambdas), c.weights, c.r_grid, n_samples, next_seed());
                    for (std::size_t j = 0; j < res.r_grid.size(); ++j) {
                        report.rows.push_back(
                            make_row(c.name + "_r=" + short_double(res.r_grid[j]), res.ci_low[j], res.bound[j]));
                    }
                }
                break;
            }
        }
    }
    return report;
}

}  // namespace boolconc
