#pragma once

#include <vector>

#include "isodyn/cat0/boundary.hpp"
#include "isodyn/core/halfspace.hpp"
#include "isodyn/util/numeric.hpp"

namespace isodyn::cat0 {

inline constexpr double kStarAngleTol = 1e-6;

// Star membership through the angular metric: eta lies in the star of xi iff
// their Tits angle is at most pi/2.
inline bool star_membership_analytic(const Signature& sig, const VisualBoundaryPoint& xi,
                                     const VisualBoundaryPoint& eta) {
    return angular_metric(sig, xi, eta) <= util::kPi / 2.0 + kStarAngleTol;
}

inline double default_star_scale(const Signature& sig) {
    return (sig.hyperbolic && sig.euclidean_dim == 0) ? 15.0 : 1e3;
}

// Finite-scale rendering of the halfspace definition of the star: witnesses
// sit at parameters >= R along rays near xi, the tested point sits far along
// the ray to eta (the test parameter must dominate the witness parameter for
// the membership threshold to approach pi/2). Reliable away from a narrow
// band around the pi/2 threshold.
inline bool star_membership_sampled(const Signature& sig, const VisualBoundaryPoint& xi,
                                    const VisualBoundaryPoint& eta, double scale, double slack) {
    validate_boundary(sig, xi);
    validate_boundary(sig, eta);
    const RaySpace space(sig);

    std::vector<RayPoint> witnesses;
    auto push_ray = [&](const VisualBoundaryPoint& w) {
        witnesses.push_back({w, scale});
        witnesses.push_back({w, 2.0 * scale});
    };
    push_ray(xi);
    // a small angular neighborhood of xi
    const double delta = 1e-3;
    if (sig.euclidean_dim > 1 && xi.theta < util::kPi / 2.0 - 1e-12) {
        for (int k = 0; k < sig.euclidean_dim; ++k) {
            Eigen::VectorXd d = xi.direction;
            d(k) += delta;
            VisualBoundaryPoint w = xi;
            w.direction = d / d.norm();
            push_ray(w);
        }
    }
    if (sig.hyperbolic && xi.theta > 1e-12) {
        for (double off : {-delta, delta}) {
            VisualBoundaryPoint w = xi;
            w.ideal_angle = util::wrap_angle(xi.ideal_angle + off);
            push_ray(w);
        }
    }

    core::HalfspaceSpec<RayPoint> spec{std::move(witnesses), slack, space.basepoint()};
    // The tested point must sit much deeper than the witnesses for the
    // membership threshold to approach pi/2. At the threshold itself the
    // distance gap decays like scale/kappa, so the comparison gets a
    // tolerance of that order; ties resolve to membership, consistent with
    // the closure in the definition of the star.
    const double kappa = 64.0;
    return core::halfspace_contains(space, spec, RayPoint{eta, kappa * scale}, 1.0 / (kappa * kappa));
}

inline bool star_membership_sampled(const Signature& sig, const VisualBoundaryPoint& xi,
                                    const VisualBoundaryPoint& eta) {
    return star_membership_sampled(sig, xi, eta, default_star_scale(sig), 0.0);
}

}  // namespace isodyn::cat0
