#include "boolconc/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace boolconc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonnegative(double z, const char* name) {
    if (std::isnan(z) || z < 0.0)
        throw std::invalid_argument(std::string(name) + ": argument must be >= 0");
}

}  // namespace

double phi(double z) {
    require_nonnegative(z, "phi");
    if (z == kInf) return kInf;
    if (z < 1.0) {
        // sum_{k>=2} z^k / k!; the tail after 20 terms is below 1e-19 relative
        double term = 0.5 * z * z;
        double sum = 0.0;
        for (int k = 3; k < 24 && term > 1e-18 * sum; ++k) {
            sum += term;
            term *= z / k;
        }
        return sum + term;
    }
    return std::expm1(z) - z;
}

ExtendedReal psi(double z) {
    require_nonnegative(z, "psi");
    if (z == 0.0) return kInf;
    if (z == kInf) return -kInf;
    if (z < 0.1) {
        // -z/2 + z^2/6 - z^3/12 + ... = -sum_{k>=2} (-1)^k z^{k-1} / (k(k-1))
        double sum = 0.0;
        double power = 1.0;
        for (int k = 2; k < 30; ++k) {
            power *= (k == 2) ? z : -z;
            sum -= power / (static_cast<double>(k) * (k - 1));
        }
        return sum;
    }
    return 1.0 - (1.0 + z) * std::log1p(z) / z;
}

double tau(ExtendedReal z) {
    require_nonnegative(z, "tau");
    if (z == 0.0) return 1.0;
    if (z == kInf) return 0.0;
    return -std::expm1(-z) / z;
}

double x_minus_log1p(double x) {
    if (std::isnan(x) || x <= -1.0)
        throw std::invalid_argument("x_minus_log1p: argument must be > -1");
    if (x == kInf) return kInf;
    if (std::abs(x) < 0.1) {
        // x^2/2 - x^3/3 + x^4/4 - ...
        double sum = 0.0;
        double power = x;
        for (int k = 2; k < 30; ++k) {
            power *= -x;
            sum -= power / k;
        }
        return sum;
    }
    return x - std::log1p(x);
}

}  // namespace boolconc
