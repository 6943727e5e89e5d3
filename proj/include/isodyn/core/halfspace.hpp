#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "isodyn/core/metric.hpp"
#include "isodyn/util/numeric.hpp"

namespace isodyn::core {

// A halfspace is defined by a target set W (here a finite witness list),
// a slack C and a basepoint x0; it contains the points z with
// d(z,W) <= d(z,x0) + C. Finite witnesses under-approximate membership
// monotonically, which is the safe direction for the claims tested here.
template <typename Point>
struct HalfspaceSpec {
    std::vector<Point> witnesses;
    double slack = 0.0;
    Point basepoint{};
};

template <MetricModel M>
double distance_to_witnesses(const M& model, const std::vector<typename M::Point>& witnesses,
                             const typename M::Point& z) {
    if (witnesses.empty()) throw std::invalid_argument("halfspace: empty witness set");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : witnesses) best = std::min(best, model.distance(z, w));
    return best;
}

template <MetricModel M>
const typename M::Point& nearest_witness(const M& model, const std::vector<typename M::Point>& witnesses,
                                         const typename M::Point& z) {
    if (witnesses.empty()) throw std::invalid_argument("halfspace: empty witness set");
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        const double d = model.distance(z, witnesses[i]);
        if (d < best) {
            best = d;
            arg = i;
        }
    }
    return witnesses[arg];
}

// Boundary ties resolve to membership.
template <MetricModel M>
bool halfspace_contains(const M& model, const HalfspaceSpec<typename M::Point>& spec,
                        const typename M::Point& z, double eps = util::kMetricTol) {
    const double dw = distance_to_witnesses(model, spec.witnesses, z);
    const double d0 = model.distance(z, spec.basepoint);
    return util::leq_tol(dw, d0 + spec.slack, eps);
}

}  // namespace isodyn::core
