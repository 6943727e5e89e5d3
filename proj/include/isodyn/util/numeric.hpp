#pragma once

#include <algorithm>
#include <cmath>

namespace isodyn::util {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kMetricTol = 1e-9;  // relative tolerance for metric comparisons

// a <= b up to a relative tolerance; ties resolve to true.
inline bool leq_tol(double a, double b, double eps = kMetricTol) {
    return a <= b + eps * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline bool approx_eq(double a, double b, double eps = kMetricTol) {
    return std::fabs(a - b) <= eps * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

// Distance on the circle, in [0, pi].
inline double circle_distance(double a, double b) { return std::fabs(wrap_angle(a - b)); }

inline double sqr(double x) { return x * x; }

}  // namespace isodyn::util
