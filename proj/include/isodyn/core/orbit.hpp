#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "isodyn/core/metric.hpp"
#include "isodyn/core/special.hpp"

namespace isodyn::core {

enum class Boundedness { Bounded, Unbounded };

// Orbit of a semicontraction: points f^n(x0) for n = 0..n_steps, their
// distances to the basepoint, and the special indices among them. Special
// indices below the unboundedness threshold are dropped, since finite data
// cannot witness divergence.
template <typename Point>
struct OrbitRecord {
    std::vector<Point> points;
    std::vector<double> lengths;
    std::vector<std::size_t> special_indices;
    Boundedness classification = Boundedness::Bounded;
    double max_length = 0.0;
};

template <MetricModel M, typename F>
OrbitRecord<typename M::Point> generate_orbit(const M& model, F&& f, const typename M::Point& x0,
                                              std::size_t n_steps, double slack, double bound_threshold) {
    if (n_steps < 1) throw std::invalid_argument("generate_orbit: n_steps must be >= 1");
    OrbitRecord<typename M::Point> rec;
    rec.points.reserve(n_steps + 1);
    rec.lengths.reserve(n_steps + 1);
    typename M::Point p = x0;
    for (std::size_t n = 0; n <= n_steps; ++n) {
        rec.points.push_back(p);
        rec.lengths.push_back(model.distance(p, x0));
        rec.max_length = std::max(rec.max_length, rec.lengths.back());
        if (n < n_steps) p = f(p);
    }
    rec.classification = rec.max_length > bound_threshold ? Boundedness::Unbounded : Boundedness::Bounded;
    for (std::size_t i : detect_special_indices(rec.lengths, slack))
        if (rec.lengths[i] > bound_threshold) rec.special_indices.push_back(i);
    return rec;
}

}  // namespace isodyn::core
