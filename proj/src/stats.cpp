#include "boolconc/stats.hpp"

#include <array>
#include <boost/math/distributions/beta.hpp>
#include <cmath>
#include <stdexcept>

namespace boolconc {

ConfidenceInterval clopper_pearson(std::size_t k, std::size_t n, double level) {
    if (n == 0) throw std::invalid_argument("clopper_pearson: n must be > 0");
    if (k > n) throw std::invalid_argument("clopper_pearson: k must be <= n");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("clopper_pearson: level must lie in (0, 1)");
    const double alpha = 1.0 - level;
    const auto kd = static_cast<double>(k);
    const auto nd = static_cast<double>(n);
    ConfidenceInterval ci;
    ci.low = k == 0 ? 0.0 : quantile(boost::math::beta_distribution<>(kd, nd - kd + 1.0), alpha / 2.0);
    ci.high = k == n ? 1.0 : quantile(boost::math::beta_distribution<>(kd + 1.0, nd - kd), 1.0 - alpha / 2.0);
    return ci;
}

MeanEstimate mean_and_se(std::span<const double> xs) {
    if (xs.empty()) return {};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double var = ss / static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

double halton(std::size_t index, int axis) {
    static constexpr std::array<unsigned, 3> kBases{2, 3, 5};
    if (axis < 0 || axis > 2) throw std::invalid_argument("halton: axis must be 0, 1 or 2");
    const unsigned base = kBases[static_cast<std::size_t>(axis)];
    double f = 1.0;
    double result = 0.0;
    while (index > 0) {
        f /= base;
        result += f * static_cast<double>(index % base);
        index /= base;
    }
    return result;
}

}  // namespace boolconc
