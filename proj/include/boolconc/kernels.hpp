#pragma once

// Scalar kernels shared by every tail bound. All functions are pure.

namespace boolconc {

/// Real number or +infinity. Finite values are never NaN.
using ExtendedReal = double;

/// e^z - 1 - z for z >= 0, accurate to ~1e-15 relative including z -> 0.
double phi(double z);

/// 1 - (1+z) log(1+z) / z for z > 0. psi(0) is +infinity by convention even
/// though the limit from the right is 0; callers only evaluate it at z > 0.
ExtendedReal psi(double z);

/// (1 - e^{-z}) / z with tau(0) = 1 and tau(+inf) = 0.
double tau(ExtendedReal z);

/// x - log(1+x) for x > -1, without cancellation near 0.
double x_minus_log1p(double x);

}  // namespace boolconc
