#pragma once

#include <cstddef>
#include <span>

namespace boolconc {

struct ConfidenceInterval {
    double low = 0.0;
    double high = 1.0;
};

/// Exact (Clopper-Pearson) two-sided binomial interval for k successes in
/// n trials at confidence `level` in (0, 1).
ConfidenceInterval clopper_pearson(std::size_t k, std::size_t n, double level);

struct MeanEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Sample mean and its standard error (n-1 variance).
MeanEstimate mean_and_se(std::span<const double> xs);

/// Radical-inverse (Halton) point `index` >= 1 in [0,1)^dim, bases 2, 3, 5.
double halton(std::size_t index, int axis);

}  // namespace boolconc
