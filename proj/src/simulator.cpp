#include "boolconc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "boolconc/random.hpp"
#include "boolconc/stats.hpp"
#include "csv_util.hpp"
#include "parallel.hpp"

namespace boolconc {
namespace {

constexpr std::size_t kMaxCells = 1u << 16;

Vec3 half_extent(const Grain& g) {
    if (g.shape == Grain::Shape::kBall) return {g.radius, g.radius, g.radius};
    return g.half_sides;
}

// Uniform cell grid over the window; each cell lists the grains whose
// bounding box meets it.
class CoverageIndex {
public:
    CoverageIndex(const Realization& r, const Window& w) : grains_(r.grains), window_(w), dim_(w.dimension()) {
        Vec3 reach{};
        for (const auto& g : grains_) {
            const Vec3 h = half_extent(g);
            for (int k = 0; k < dim_; ++k) reach[k] = std::max(reach[k], h[k]);
        }
        const double per_axis_limit = std::pow(static_cast<double>(kMaxCells), 1.0 / dim_);
        std::size_t total = 1;
        for (int k = 0; k < dim_; ++k) {
            double n = reach[k] > 0.0 ? std::floor(w.side(k) / (2.0 * reach[k])) : 1.0;
            n = std::clamp(n, 1.0, std::floor(per_axis_limit));
            cells_[k] = static_cast<std::size_t>(n);
            width_[k] = w.side(k) / n;
            total *= cells_[k];
        }
        lists_.resize(total);
        for (std::size_t i = 0; i < grains_.size(); ++i) {
            const Grain& g = grains_[i];
            const Vec3 h = half_extent(g);
            std::array<std::size_t, 3> lo{0, 0, 0};
            std::array<std::size_t, 3> hi{0, 0, 0};
            bool outside = false;
            for (int k = 0; k < dim_; ++k) {
                const double a = g.center[k] - h[k];
                const double b = g.center[k] + h[k];
                if (b < w.lower()[k] || a > w.upper()[k]) outside = true;
                lo[k] = cell_of(a, k);
                hi[k] = cell_of(b, k);
            }
            if (outside) continue;
            for (std::size_t i0 = lo[0]; i0 <= hi[0]; ++i0)
                for (std::size_t i1 = lo[1]; i1 <= hi[1]; ++i1)
                    for (std::size_t i2 = lo[2]; i2 <= hi[2]; ++i2) lists_[flat({i0, i1, i2})].push_back(i);
        }
    }

    /// Number of grains covering p, counting no further than `cap`.
    int count(const Vec3& p, int cap) const {
        const auto& list = lists_[flat({cell_of(p[0], 0), cell_of(p[1], 1), cell_of(p[2], 2)})];
        int hits = 0;
        for (std::size_t i : list) {
            if (grains_[i].contains(p, dim_) && ++hits >= cap) break;
        }
        return hits;
    }

private:
    std::size_t cell_of(double x, int axis) const {
        if (axis >= dim_) return 0;
        const double t = std::floor((x - window_.lower()[axis]) / width_[axis]);
        if (t <= 0.0) return 0;
        return std::min(static_cast<std::size_t>(t), cells_[axis] - 1);
    }
    std::size_t flat(std::array<std::size_t, 3> idx) const {
        return (idx[0] * cells_[1] + idx[1]) * cells_[2] + idx[2];
    }

    const std::vector<Grain>& grains_;
    const Window& window_;
    int dim_;
    std::array<std::size_t, 3> cells_{1, 1, 1};
    Vec3 width_{1.0, 1.0, 1.0};
    std::vector<std::vector<std::size_t>> lists_;
};

void check_method(const Realization& r, const Window& w, const VolumeMethod& m) {
    if (r.dimension != w.dimension()) throw std::invalid_argument("measure_volume: realization and window dimensions differ");
    if (m.kind == VolumeMethodKind::kExact1d && w.dimension() != 1)
        throw std::invalid_argument("measure_volume: exact_1d requires dimension 1");
    if (m.kind != VolumeMethodKind::kExact1d && m.n_points == 0)
        throw std::invalid_argument("measure_volume: point methods need n_points > 0");
}

// Clipped intervals of a one-dimensional realization as (+1/-1) events.
std::vector<std::pair<double, int>> interval_events(const Realization& r, const Window& w) {
    std::vector<std::pair<double, int>> events;
    events.reserve(2 * r.grains.size());
    for (const auto& g : r.grains) {
        const double h = g.shape == Grain::Shape::kBall ? g.radius : g.half_sides[0];
        const double a = std::max(g.center[0] - h, w.lower()[0]);
        const double b = std::min(g.center[0] + h, w.upper()[0]);
        if (b <= a) continue;
        events.emplace_back(a, +1);
        events.emplace_back(b, -1);
    }
    std::sort(events.begin(), events.end());
    return events;
}

// Length where the coverage count satisfies pred.
template <class Pred>
double sweep_length(const std::vector<std::pair<double, int>>& events, Pred pred) {
    double length = 0.0;
    int depth = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        depth += events[i].second;
        if (i + 1 < events.size() && pred(depth)) length += events[i + 1].first - events[i].first;
    }
    return length;
}

// Fraction of the method's points satisfying pred(coverage count).
template <class Pred>
VolumeEstimate point_estimate(const Realization& r, const Window& w, const VolumeMethod& m, std::uint64_t seed,
                              int cap, Pred pred) {
    const CoverageIndex index(r, w);
    const int d = w.dimension();
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t hits = 0;
    Vec3 p{};
    for (std::size_t i = 0; i < m.n_points; ++i) {
        for (int k = 0; k < d; ++k) {
            const double u = m.kind == VolumeMethodKind::kGrid ? unit(rng) : halton(i + 1, k);
            p[k] = w.lower()[k] + u * w.side(k);
        }
        if (pred(index.count(p, cap))) ++hits;
    }
    const double n = static_cast<double>(m.n_points);
    const double frac = static_cast<double>(hits) / n;
    VolumeEstimate est;
    est.value = frac * w.volume();
    if (m.kind == VolumeMethodKind::kGrid) {
        est.standard_error = w.volume() * std::sqrt(frac * (1.0 - frac) / n);
    } else {
        est.se_quantified = false;
    }
    return est;
}

void require_grid(std::span<const double> r_grid) {
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0) || !std::isfinite(r_grid[i])) throw std::invalid_argument("r grid must be positive");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw std::invalid_argument("r grid must be strictly increasing");
    }
}

void fill_tail(TailEstimate& est) {
    const std::size_t m = est.r_grid.size();
    est.tail.assign(m, 0.0);
    est.ci_low.assign(m, 0.0);
    est.ci_high.assign(m, 1.0);
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t k = 0;
        for (double f : est.samples)
            if (f - est.mean_F_used >= est.r_grid[j]) ++k;
        const auto ci = clopper_pearson(k, est.n_reps, est.ci_level);
        est.tail[j] = static_cast<double>(k) / static_cast<double>(est.n_reps);
        est.ci_low[j] = ci.low;
        est.ci_high[j] = ci.high;
    }
}

}  // namespace

Grain sample_grain(const BooleanModelSpec& spec, const Window& placement, Rng& rng) {
    const int d = spec.dimension;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Grain g;
    for (int k = 0; k < d; ++k) g.center[k] = placement.lower()[k] + unit(rng) * placement.side(k);
    std::visit(
        [&](const auto& model) {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, FixedBall>) {
                g.radius = model.radius;
            } else if constexpr (std::is_same_v<T, FixedInterval>) {
                g.radius = 0.5 * model.length;
            } else if constexpr (std::is_same_v<T, FixedBox>) {
                g.shape = Grain::Shape::kBox;
                for (int k = 0; k < d; ++k) g.half_sides[k] = 0.5 * model.sides[static_cast<std::size_t>(k)];
            } else {
                const double q = radius_law_bounded(model.radius_law) ? 1.0 : model.truncation_quantile;
                g.radius = radius_quantile(model.radius_law, unit(rng) * q);
            }
        },
        spec.grain);
    return g;
}

Realization sample_realization(const BooleanModelSpec& spec, const Window& window, std::uint64_t seed) {
    spec.validate();
    if (spec.dimension != window.dimension()) throw std::invalid_argument("sample_realization: dimension mismatch");
    const int d = spec.dimension;
    const Window box = window.dilated(spec.support_half_extent());
    Rng rng(seed);
    std::poisson_distribution<long long> count_dist(spec.germ_intensity * box.volume());
    const long long count = count_dist(rng);

    Realization out;
    out.dimension = d;
    out.grains.reserve(static_cast<std::size_t>(count));
    for (long long n = 0; n < count; ++n) {
        out.grains.push_back(sample_grain(spec, box, rng));
    }
    return out;
}

void write_realization_csv(std::ostream& out, const Realization& realization) {
    for (int k = 0; k < realization.dimension; ++k) out << 'x' << (k + 1) << ',';
    out << "param\n";
    for (const auto& g : realization.grains) {
        for (int k = 0; k < realization.dimension; ++k) out << exact_double(g.center[k]) << ',';
        const double param = g.shape == Grain::Shape::kBall ? g.radius : 2.0 * g.half_sides[0];
        out << exact_double(param) << '\n';
    }
}

VolumeEstimate measure_volume(const Realization& realization, const Window& window, const VolumeMethod& method,
                              std::uint64_t seed) {
    check_method(realization, window, method);
    if (realization.grains.empty()) return {0.0, 0.0, method.kind != VolumeMethodKind::kQuasiMc};
    if (method.kind == VolumeMethodKind::kExact1d) {
        return {sweep_length(interval_events(realization, window), [](int depth) { return depth > 0; }), 0.0, true};
    }
    return point_estimate(realization, window, method, seed, 1, [](int c) { return c >= 1; });
}

VolumeEstimate exactly_once_volume(const Realization& realization, const Window& window, const VolumeMethod& method,
                                   std::uint64_t seed) {
    check_method(realization, window, method);
    if (realization.grains.empty()) return {0.0, 0.0, method.kind != VolumeMethodKind::kQuasiMc};
    if (method.kind == VolumeMethodKind::kExact1d) {
        return {sweep_length(interval_events(realization, window), [](int depth) { return depth == 1; }), 0.0, true};
    }
    return point_estimate(realization, window, method, seed, 2, [](int c) { return c == 1; });
}

TailEstimate estimate_tail(const BooleanModelSpec& spec, const Window& window, std::span<const double> r_grid,
                           const SimulationOptions& options, std::uint64_t seed) {
    if (options.n_reps < 100) throw std::invalid_argument("estimate_tail: n_reps must be >= 100");
    if (!(options.ci_level > 0.0 && options.ci_level < 1.0))
        throw std::invalid_argument("estimate_tail: ci_level must lie in (0, 1)");
    require_grid(r_grid);
    spec.validate();

    TailEstimate est;
    est.r_grid.assign(r_grid.begin(), r_grid.end());
    est.n_reps = options.n_reps;
    est.ci_level = options.ci_level;
    est.samples.assign(options.n_reps, 0.0);
    parallel_for(options.n_reps, options.threads, [&](std::size_t i) {
        const Realization real = sample_realization(spec, window, derive_seed(seed, 2 * i));
        est.samples[i] = measure_volume(real, window, options.method, derive_seed(seed, 2 * i + 1)).value;
    });
    const MeanEstimate mean = mean_and_se(est.samples);
    est.mean_F_hat = mean.mean;
    est.se_mean = mean.standard_error;
    est.mean_F_analytic = -std::expm1(-spec.simulated_gamma1()) * window.volume();
    est.mean_F_used = spec.exact() ? est.mean_F_analytic : est.mean_F_hat;
    fill_tail(est);
    return est;
}

TailEstimate with_ci_level(const TailEstimate& estimate, double level) {
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("with_ci_level: level must lie in (0, 1)");
    TailEstimate out = estimate;
    out.ci_level = level;
    fill_tail(out);
    return out;
}

void write_csv(std::ostream& out, const TailEstimate& estimate) {
    out << "r,tail,ci_low,ci_high\n";
    for (std::size_t j = 0; j < estimate.r_grid.size(); ++j) {
        out << exact_double(estimate.r_grid[j]) << ',' << exact_double(estimate.tail[j]) << ','
            << exact_double(estimate.ci_low[j]) << ',' << exact_double(estimate.ci_high[j]) << '\n';
    }
}

VolumeFractionEstimate estimate_volume_fraction(const BooleanModelSpec& spec, const Window& window,
                                                std::size_t n_points, std::size_t n_reps, std::uint64_t seed,
                                                unsigned threads) {
    if (n_reps < 2) throw std::invalid_argument("estimate_volume_fraction: need at least 2 replications");
    if (n_points == 0) throw std::invalid_argument("estimate_volume_fraction: n_points must be > 0");
    spec.validate();
    std::vector<double> fractions(n_reps, 0.0);
    parallel_for(n_reps, threads, [&](std::size_t i) {
        const Realization real = sample_realization(spec, window, derive_seed(seed, 2 * i));
        const auto v = measure_volume(real, window, VolumeMethod::grid(n_points), derive_seed(seed, 2 * i + 1));
        fractions[i] = v.value / window.volume();
    });
    const MeanEstimate m = mean_and_se(fractions);
    return {m.mean, m.standard_error};
}

}  // namespace boolconc
