#pragma once

// Monte Carlo checks of the Poisson-functional machinery on finite spaces
// X = {0, ..., n-1} with intensity lambda_i at point i. A configuration of
// the process is a vector of counts.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "boolconc/random.hpp"

namespace boolconc {

inline constexpr std::size_t kMaxFiniteSpacePoints = 12;

class FiniteSpace {
public:
    /// Throws std::invalid_argument unless 1 <= n <= 12 and every lambda > 0.
    explicit FiniteSpace(std::vector<double> lambdas);

    std::size_t size() const noexcept { return lambdas_.size(); }
    const std::vector<double>& lambdas() const noexcept { return lambdas_; }
    double lambda(std::size_t i) const { return lambdas_.at(i); }
    double total() const noexcept;

private:
    std::vector<double> lambdas_;
};

using CountVector = std::vector<int>;

CountVector sample_poisson(const FiniteSpace& space, Rng& rng);
CountVector sample_poisson(const FiniteSpace& space, std::uint64_t seed);

/// Keeps each point independently with probability t in [0, 1].
CountVector t_thinning(const CountVector& mu, double t, Rng& rng);
CountVector t_thinning(const CountVector& mu, double t, std::uint64_t seed);

/// A functional f(mu) of a count vector.
struct Functional {
    std::string name;
    std::function<double(std::span<const int>)> eval;

    double operator()(std::span<const int> mu) const { return eval(mu); }
    /// D_x f(mu) = f(mu + delta_x) - f(mu)
    double difference(const CountVector& mu, std::size_t x) const;
};

namespace functionals {
Functional constant(double c);
/// sum of counts
Functional total_count();
/// sum g_i mu_i
Functional linear(std::vector<double> weights);
/// 1{mu_i > 0}
Functional occupied(std::size_t i);
/// 1{mu_i >= k}
Functional at_least(std::size_t i, int k);
/// min(mu_i mu_j, cap)
Functional capped_product(std::size_t i, std::size_t j, double cap);
/// max_i mu_i, capped
Functional capped_max(double cap);
}  // namespace functionals

/// Number of strata of the t-integral.
inline constexpr std::size_t kThinningStrata = 32;

struct CovarianceCheck {
    double lhs = 0.0;     ///< sample covariance of F and G
    double lhs_se = 0.0;
    double rhs = 0.0;     ///< nested estimate of E[sum_x lambda_x D_xF int_0^1 E D_xG(eta_t + mu) dt]
    double rhs_se = 0.0;
    double z = 0.0;       ///< (lhs - rhs) / SE of the paired difference; 0 if the difference vanishes
};

/// Per outer sample eta the t-integral uses one stratified t per stratum and
/// a fresh mu ~ Poisson((1-t) lambda) added to the t-thinning of eta.
CovarianceCheck covariance_identity_check(const Functional& f, const Functional& g, const FiniteSpace& space,
                                          std::size_t n_samples, std::uint64_t seed, unsigned threads = 0);

struct CumulantCheck {
    double lhs = 0.0;  ///< log E exp(s (F - E F))
    double rhs = 0.0;  ///< theta / (s (1 - theta)) int_0^s log E exp(s V_F(u) / theta) du
    double se = 0.0;   ///< combined standard error
    bool pass = false; ///< lhs <= rhs + 3 se
};

/// The u-integral uses 16-point Gauss-Legendre; V_F(u) is evaluated with the
/// same nested t-integral as the covariance check.
CumulantCheck cumulant_bound_check(const Functional& f, const FiniteSpace& space, double s, double theta,
                                   std::size_t n_samples, std::uint64_t seed, unsigned threads = 0);

struct MeckeCheck {
    std::vector<double> r_grid;
    std::vector<double> tail;    ///< empirical P(F - E F >= r)
    std::vector<double> ci_low;  ///< Clopper-Pearson lower limit
    std::vector<double> bound;   ///< Mecke-route bound with a = max g, b = 0
    bool pass = false;           ///< ci_low <= bound everywhere
};

/// F = sum g_i mu_i with g_i >= 0 (not all zero); E F is exact.
MeckeCheck mecke_bound_check(const FiniteSpace& space, std::span<const double> g_weights,
                             std::span<const double> r_grid, std::size_t n_samples, std::uint64_t seed,
                             double ci_level = 0.998);

struct CheckRow {
    std::string check_name;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;  ///< statistic <= threshold
};

struct TestbedReport {
    std::vector<CheckRow> rows;
    bool all_passed() const noexcept;
};

/// Rows `check_name,statistic,threshold,pass`.
void write_csv(std::ostream& out, const TestbedReport& report);

/// Groups of the fixed verification battery.
enum class BatteryGroup { kThinning, kCovariance, kCumulant, kMecke };

std::string_view battery_group_name(BatteryGroup g);
/// Throws std::invalid_argument for unknown names.
BatteryGroup parse_battery_group(std::string_view name);
std::vector<BatteryGroup> default_battery();

/// Runs the fixed configurations of each group. Throws std::invalid_argument
/// for an empty battery.
TestbedReport run_battery(std::span<const BatteryGroup> groups, std::size_t n_samples, std::uint64_t seed,
                          unsigned threads = 0);

}  // namespace boolconc
