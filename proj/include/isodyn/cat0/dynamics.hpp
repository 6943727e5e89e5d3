#pragma once

#include <optional>
#include <vector>

#include "isodyn/cat0/boundary.hpp"
#include "isodyn/cat0/isometry.hpp"
#include "isodyn/cat0/model.hpp"
#include "isodyn/util/numeric.hpp"

namespace isodyn::cat0 {

// Boundary estimate of a deep orbit point: Euclidean direction, ideal angle,
// and mixing angle from the ratio of the factor distances.
inline VisualBoundaryPoint boundary_estimate(const Signature& sig, const Cat0Point& p) {
    double flat = 0.0, hyp = 0.0;
    if (sig.euclidean_dim > 0) flat = p.euc.norm();
    if (sig.hyperbolic) hyp = 2.0 * std::atanh(std::min(std::abs(p.hyp), 1.0 - 1e-17));
    VisualBoundaryPoint xi;
    xi.direction = Eigen::VectorXd::Zero(sig.euclidean_dim);
    if (flat > 0.0) xi.direction = p.euc / flat;
    if (sig.hyperbolic) xi.ideal_angle = std::arg(p.hyp);
    xi.theta = sig.euclidean_dim == 0 ? util::kPi / 2.0 : std::atan2(hyp, flat);
    return xi;
}

// Distance (in the round visual metric) from zeta to the closed Tits ball of
// radius pi/2 around the center: grid search along the coordinate
// interpolation from zeta to the center, refined by bisection on the
// qualifying/non-qualifying boundary.
inline double visual_distance_to_star(const Signature& sig, const VisualBoundaryPoint& center,
                                      const VisualBoundaryPoint& zeta) {
    if (angular_metric(sig, center, zeta) <= util::kPi / 2.0 + 1e-12) return 0.0;

    auto interpolate = [&](double s) {
        VisualBoundaryPoint p;
        p.theta = (1.0 - s) * zeta.theta + s * center.theta;
        p.ideal_angle = util::wrap_angle(zeta.ideal_angle + s * util::wrap_angle(center.ideal_angle - zeta.ideal_angle));
        p.direction = Eigen::VectorXd::Zero(sig.euclidean_dim);
        if (zeta.direction.size() > 0 && center.direction.size() > 0) {
            Eigen::VectorXd v = (1.0 - s) * zeta.direction + s * center.direction;
            const double n = v.norm();
            p.direction = n > 1e-12 ? Eigen::VectorXd(v / n) : zeta.direction;
        } else if (zeta.direction.size() > 0) {
            p.direction = zeta.direction;
        } else if (center.direction.size() > 0) {
            p.direction = center.direction;
        }
        if (sig.euclidean_dim == 0) p.direction = Eigen::VectorXd();
        return p;
    };

    // bisect for the smallest s whose interpolant enters the ball
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (angular_metric(sig, center, interpolate(mid)) <= util::kPi / 2.0 + 1e-12)
            hi = mid;
        else
            lo = mid;
    }
    return visual_metric(sig, zeta, interpolate(hi));
}

struct DynamicsOptions {
    std::size_t steps = 200;             // iterations of the boundary action
    std::size_t estimation_steps = 4000; // orbit length used to estimate xi+-
    double success_threshold = 1e-3;
    double exclusion_radius = 0.1;       // visual neighborhood of xi- left out
};

struct DynamicsRecord {
    VisualBoundaryPoint xi_plus, xi_minus;
    bool estimates_converged = false;
    bool precondition_ok = false;        // angle(eta, xi-) > pi/2 and eta outside the excluded neighborhood
    std::vector<double> distance_trace;  // visual distance to the pi/2 ball around xi+
    std::vector<double> orbit_distance;  // d(x0, g^n x0), saturating at the disk precision wall
    double final_distance = 0.0;
    bool success = false;
};

// Estimate the forward limit of g^n x0 on the boundary; converged when
// successive estimates differ by < 1e-6 in the visual metric.
inline std::pair<VisualBoundaryPoint, bool> forward_limit(const Signature& sig, const Cat0Isometry& g,
                                                          std::size_t n_max) {
    const Cat0Model model(sig);
    Cat0Point p = model.basepoint();
    std::optional<VisualBoundaryPoint> prev;
    bool converged = false;
    double clearance = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        p = g.apply(sig, p);
        if (sig.hyperbolic && std::abs(p.hyp) >= 1.0 - 1e-11) {
            // the disk coordinate has hit the precision wall; the angle keeps evolving
            p.hyp *= (1.0 - 1e-11) / std::abs(p.hyp);
        }
        clearance = std::max(clearance, model.distance(p, model.basepoint()));
        if (n % 16 == 0 || n == n_max) {
            VisualBoundaryPoint est = boundary_estimate(sig, p);
            if (prev && clearance > 1.0 && visual_metric(sig, *prev, est) < 1e-6) converged = true;
            prev = est;
        }
    }
    return {prev.value_or(VisualBoundaryPoint{Eigen::VectorXd::Zero(sig.euclidean_dim), 0.0,
                                              sig.euclidean_dim == 0 ? util::kPi / 2.0 : 0.0}),
            converged};
}

// Iterates the boundary action of g on eta and tracks the visual distance to
// the closed pi/2 Tits ball around the estimated forward limit. The theorem
// being exercised gives no guarantee for eta near the star of the backward
// limit; such eta are reported as precondition violations.
inline DynamicsRecord dynamics_experiment(const Signature& sig, const Cat0Isometry& g,
                                          const VisualBoundaryPoint& eta, const DynamicsOptions& opts = {}) {
    validate_boundary(sig, eta);
    DynamicsRecord rec;
    auto [xp, cp] = forward_limit(sig, g, opts.estimation_steps);
    auto [xm, cm] = forward_limit(sig, g.inverse(), opts.estimation_steps);
    rec.xi_plus = xp;
    rec.xi_minus = xm;
    rec.estimates_converged = cp && cm;

    const double tits_to_minus = angular_metric(sig, eta, rec.xi_minus);
    rec.precondition_ok = tits_to_minus > util::kPi / 2.0 + 1e-12 &&
                          visual_metric(sig, eta, rec.xi_minus) > opts.exclusion_radius;
    if (!rec.precondition_ok) return rec;

    VisualBoundaryPoint z = eta;
    const Cat0Model model(sig);
    Cat0Point p = model.basepoint();
    rec.distance_trace.reserve(opts.steps);
    rec.orbit_distance.reserve(opts.steps);
    for (std::size_t n = 0; n < opts.steps; ++n) {
        z = g.apply_boundary(sig, z);
        rec.distance_trace.push_back(visual_distance_to_star(sig, rec.xi_plus, z));
        p = g.apply(sig, p);
        if (sig.hyperbolic && std::abs(p.hyp) >= 1.0 - 1e-11) p.hyp *= (1.0 - 1e-11) / std::abs(p.hyp);
        rec.orbit_distance.push_back(model.distance(p, model.basepoint()));
    }
    rec.final_distance = rec.distance_trace.empty() ? 0.0 : rec.distance_trace.back();
    rec.success = rec.final_distance < opts.success_threshold;
    return rec;
}

}  // namespace isodyn::cat0
