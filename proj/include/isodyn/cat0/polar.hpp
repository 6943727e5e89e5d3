#pragma once

#include <cmath>
#include <limits>

#include "isodyn/util/numeric.hpp"

namespace isodyn::cat0 {

namespace detail {
inline constexpr double kLn2 = 0.6931471805599453094;
inline double ln_cosh(double x) {
    x = std::fabs(x);
    return x + std::log1p(std::exp(-2.0 * x)) - kLn2;
}
inline double ln_sinh(double x) {  // x > 0
    return x + std::log1p(-std::exp(-2.0 * x)) - kLn2;
}
}  // namespace detail

// Hyperbolic distance between points given in polar form (radius from the
// origin, angle of the ray), via
//   cosh d = cosh(s - t) + 2 sinh s sinh t sin^2(dphi/2),
// evaluated in log space when the radii are too large for doubles.
inline double hyperbolic_polar_distance(double s, double t, double dphi) {
    s = std::fabs(s);
    t = std::fabs(t);
    if (s == 0.0 || t == 0.0) return s + t;
    const double half = 0.5 * util::circle_distance(dphi, 0.0);
    const double s2 = util::sqr(std::sin(half));
    if (s + t < 300.0) {
        const double ch = std::cosh(s - t) + 2.0 * std::sinh(s) * std::sinh(t) * s2;
        return ch < 1e8 ? std::acosh(std::max(1.0, ch)) : std::log(2.0 * ch);
    }
    const double a = detail::ln_cosh(s - t);
    double ln_ch = a;
    if (s2 > 0.0) {
        const double b = detail::kLn2 + detail::ln_sinh(s) + detail::ln_sinh(t) + std::log(s2);
        const double m = std::max(a, b);
        ln_ch = m + std::log(std::exp(a - m) + std::exp(b - m));
    }
    if (ln_ch > 20.0) return ln_ch + detail::kLn2;
    return std::acosh(std::max(1.0, std::exp(ln_ch)));
}

}  // namespace isodyn::cat0
