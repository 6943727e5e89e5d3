#pragma once

#include <cmath>
#include <stdexcept>

#include "isodyn/hilbert/polytope.hpp"

namespace isodyn::hilbert {

// Parameters t < 0 < 1 < s with x + t(y-x) and x + s(y-x) on the boundary.
struct Chord {
    double backward = 0.0;  // beyond x
    double forward = 0.0;   // beyond y
};

inline Chord chord_through(const Polytope& p, const Vector& x, const Vector& y) {
    const Vector v = y - x;
    const Vector rx = p.residuals(x);
    double fwd = std::numeric_limits<double>::infinity();
    double bwd = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < p.facet_count(); ++i) {
        const double av = p.normals().row(i).dot(v);
        if (std::fabs(av) < 1e-14) continue;  // chord nearly parallel to the facet
        const double t = rx(i) / av;
        if (av > 0.0)
            fwd = std::min(fwd, t);
        else
            bwd = std::max(bwd, t);
    }
    if (!std::isfinite(fwd) || !std::isfinite(bwd))
        throw std::logic_error("hilbert: chord endpoints not found");
    return {bwd, fwd};
}

// log of the cross-ratio of (x, y; chord endpoints)
inline double hilbert_distance(const Polytope& p, const Vector& x, const Vector& y) {
    if (!p.strictly_inside(x, 1e-12) || !p.strictly_inside(y, 1e-12))
        throw std::domain_error("hilbert: points must be strictly interior");
    const double sep = (x - y).norm();
    if (sep == 0.0) return 0.0;
    const Chord c = chord_through(p, x, y);
    const Vector v = y - x;
    const Vector a = x + c.backward * v;  // beyond x
    const Vector b = x + c.forward * v;   // beyond y
    const double num = (a - y).norm() * (b - x).norm();
    const double den = (a - x).norm() * (b - y).norm();
    return std::log(num / den);
}

// Point on the segment from `from` toward the boundary point `target` whose
// metric distance from the centroid is (about) `dist`; bisection on the
// segment parameter.
inline Vector point_along(const Polytope& p, const Vector& from, const Vector& target, double dist) {
    const Vector x0 = p.centroid();
    double lo = 0.0, hi = 1.0 - 1e-14;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Vector z = from + mid * (target - from);
        double d;
        try {
            d = hilbert_distance(p, x0, z);
        } catch (const std::domain_error&) {
            hi = mid;
            continue;
        }
        if (d < dist)
            lo = mid;
        else
            hi = mid;
    }
    return from + lo * (target - from);
}

// segment from the centroid
inline Vector point_toward(const Polytope& p, const Vector& xi, double dist) {
    return point_along(p, p.centroid(), xi, dist);
}

struct HilbertModel {
    using Point = Vector;
    const Polytope* polytope;

    double distance(const Point& x, const Point& y) const { return hilbert_distance(*polytope, x, y); }
    Point basepoint() const { return polytope->centroid(); }
};

}  // namespace isodyn::hilbert
