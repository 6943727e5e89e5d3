#pragma once

#include <cmath>
#include <concepts>
#include <utility>
#include <vector>

#include "isodyn/util/numeric.hpp"

namespace isodyn::core {

// Contract every concrete space implements: a distance, a basepoint, and a
// value-type point. Distances must be symmetric and satisfy the triangle
// inequality up to the shared relative tolerance.
template <typename M>
concept MetricModel = requires(const M& m, const typename M::Point& p, const typename M::Point& q) {
    typename M::Point;
    { m.distance(p, q) } -> std::convertible_to<double>;
    { m.basepoint() } -> std::convertible_to<typename M::Point>;
};

// (x|z)_{x0} = (d(x,x0) + d(z,x0) - d(x,z)) / 2
template <MetricModel M>
double gromov_product(const M& model, const typename M::Point& x0, const typename M::Point& x,
                      const typename M::Point& z) {
    return 0.5 * (model.distance(x, x0) + model.distance(z, x0) - model.distance(x, z));
}

// Angle at the apex of the flat comparison triangle with the given side lengths.
inline double comparison_angle(double d_pa, double d_pb, double d_ab) {
    if (d_pa <= 0.0 || d_pb <= 0.0) return 0.0;
    const double c = (d_pa * d_pa + d_pb * d_pb - d_ab * d_ab) / (2.0 * d_pa * d_pb);
    return std::acos(util::clamp_unit(c));
}

struct ContractionReport {
    bool ok = true;
    double max_ratio = 0.0;  // worst d(f(x),f(y)) / d(x,y) over the sampled pairs
};

// Checks d(f(x),f(y)) <= d(x,y) on the sampled pairs, with a small additive
// and relative slack for roundoff. Pairs at distance ~0 contribute no ratio.
template <MetricModel M, typename F>
ContractionReport semicontraction_check(const M& model, F&& f,
                                        const std::vector<std::pair<typename M::Point, typename M::Point>>& samples) {
    ContractionReport rep;
    for (const auto& [x, y] : samples) {
        const double d = model.distance(x, y);
        const double df = model.distance(f(x), f(y));
        if (df > d * (1.0 + 1e-9) + 1e-12) rep.ok = false;
        if (d > 1e-12) rep.max_ratio = std::max(rep.max_ratio, df / d);
    }
    return rep;
}

}  // namespace isodyn::core
