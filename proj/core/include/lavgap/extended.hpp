#pragma once

#include <cmath>
#include <limits>

// Extended nonnegative arithmetic for integrands with value +inf.
// The one non-IEEE convention used throughout: 0 * (+inf) := 0, so a
// vanishing weight annihilates an infinite factor instead of producing NaN.

namespace lavgap {

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return std::isfinite(x); }

// Product with the measure-theoretic convention 0 * inf = 0.
inline double ext_mul(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return a * b;
}

// Difference used for energy gaps: never NaN. inf - inf is defined as 0
// (both sides diverged, there is no finite gap to report), finite - inf
// is -inf, inf - finite is +inf.
inline double ext_sub(double a, double b) {
    if (std::isinf(a) && std::isinf(b) && a == b) return 0.0;
    return a - b;
}

} // namespace lavgap
