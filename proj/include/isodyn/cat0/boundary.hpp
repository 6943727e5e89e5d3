#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "isodyn/cat0/model.hpp"
#include "isodyn/cat0/polar.hpp"
#include "isodyn/util/numeric.hpp"

namespace isodyn::cat0 {

// Point of the visual boundary. For a product the boundary is the spherical
// join of the factor boundaries: a unit direction in the Euclidean factor, an
// ideal angle on the circle for H^2, and a mixing angle theta in [0, pi/2]
// splitting the speed between the factors (theta = 0 pure Euclidean,
// theta = pi/2 pure hyperbolic).
struct VisualBoundaryPoint {
    Eigen::VectorXd direction;  // unit vector, empty for pure H^2 models
    double ideal_angle = 0.0;   // ignored without a hyperbolic factor
    double theta = 0.0;
};

inline VisualBoundaryPoint boundary_euclidean(const Eigen::VectorXd& dir) {
    const double n = dir.norm();
    if (n <= 0.0) throw std::invalid_argument("boundary: zero direction");
    return {dir / n, 0.0, 0.0};
}

inline VisualBoundaryPoint boundary_h2(double angle) {
    return {Eigen::VectorXd(), util::wrap_angle(angle), util::kPi / 2.0};
}

inline VisualBoundaryPoint boundary_product(const Eigen::VectorXd& dir, double angle, double theta) {
    if (theta < 0.0 || theta > util::kPi / 2.0 + 1e-12)
        throw std::invalid_argument("boundary: mixing angle outside [0, pi/2]");
    theta = std::clamp(theta, 0.0, util::kPi / 2.0);
    Eigen::VectorXd u = dir;
    const double n = u.norm();
    if (theta < util::kPi / 2.0) {
        if (n <= 0.0) throw std::invalid_argument("boundary: zero direction");
        u /= n;
    } else if (n > 0.0) {
        u /= n;
    }
    return {u, util::wrap_angle(angle), theta};
}

inline void validate_boundary(const Signature& sig, const VisualBoundaryPoint& xi) {
    if (xi.direction.size() != sig.euclidean_dim && !(xi.direction.size() == 0 && xi.theta >= util::kPi / 2.0 - 1e-12))
        throw std::invalid_argument("boundary: direction dimension mismatch");
    if (!sig.hyperbolic && xi.theta > 1e-12)
        throw std::invalid_argument("boundary: hyperbolic component in a flat model");
    if (sig.euclidean_dim == 0 && sig.hyperbolic && std::fabs(xi.theta - util::kPi / 2.0) > 1e-12)
        throw std::invalid_argument("boundary: flat component in a pure H^2 model");
    if (xi.theta < util::kPi / 2.0 - 1e-12 && xi.direction.size() > 0 &&
        std::fabs(xi.direction.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("boundary: direction not unit");
}

namespace detail {
// cos of the factor angles, with the hyperbolic factor measured in the given
// way (Tits: 0 or pi; visual: circle distance).
inline double joined_cos(const Signature& sig, const VisualBoundaryPoint& a, const VisualBoundaryPoint& b,
                         double hyp_angle) {
    const double ca = std::cos(a.theta), sa = std::sin(a.theta);
    const double cb = std::cos(b.theta), sb = std::sin(b.theta);
    double flat_cos = 1.0;
    if (sig.euclidean_dim > 0 && a.direction.size() > 0 && b.direction.size() > 0)
        flat_cos = util::clamp_unit(a.direction.dot(b.direction));
    return util::clamp_unit(ca * cb * flat_cos + sa * sb * std::cos(hyp_angle));
}
}  // namespace detail

// Tits angle sup_p angle_p(xi, eta): the spherical-join combination of the
// Euclidean angle and the H^2 angular metric (0 for equal ideal points, pi
// otherwise, H^2 being a visibility space).
inline double angular_metric(const Signature& sig, const VisualBoundaryPoint& a, const VisualBoundaryPoint& b) {
    validate_boundary(sig, a);
    validate_boundary(sig, b);
    double hyp = 0.0;
    if (sig.hyperbolic && a.theta > 1e-12 && b.theta > 1e-12)
        hyp = util::circle_distance(a.ideal_angle, b.ideal_angle) <= 1e-9 ? 0.0 : util::kPi;
    return std::acos(detail::joined_cos(sig, a, b, hyp));
}

// Metric of the round visual sphere (cone topology): same join formula but the
// hyperbolic factor contributes its circle distance.
inline double visual_metric(const Signature& sig, const VisualBoundaryPoint& a, const VisualBoundaryPoint& b) {
    validate_boundary(sig, a);
    validate_boundary(sig, b);
    double hyp = 0.0;
    if (sig.hyperbolic && a.theta > 1e-12 && b.theta > 1e-12)
        hyp = util::circle_distance(a.ideal_angle, b.ideal_angle);
    return std::acos(detail::joined_cos(sig, a, b, hyp));
}

// Point at parameter t along the unit-speed ray from the basepoint to xi.
// Only usable while the hyperbolic radius stays representable in disk
// coordinates; RayPoint below has no such limit.
inline Cat0Point ray_point(const Signature& sig, const VisualBoundaryPoint& xi, double t) {
    validate_boundary(sig, xi);
    Cat0Point p;
    p.euc = Eigen::VectorXd::Zero(sig.euclidean_dim);
    if (sig.euclidean_dim > 0 && xi.direction.size() > 0) p.euc = t * std::cos(xi.theta) * xi.direction;
    if (sig.hyperbolic) {
        const double s = t * std::sin(xi.theta);
        if (s > 34.0) throw std::domain_error("ray_point: hyperbolic radius exceeds disk precision");
        p.hyp = disk::disk_ray_point(xi.ideal_angle, s);
    }
    return p;
}

// A point on a geodesic ray from the basepoint, kept in (boundary point,
// parameter) form so that distances stay exact at any scale.
struct RayPoint {
    VisualBoundaryPoint xi;
    double t = 0.0;
};

// The union of rays from the basepoint is a metric subspace of the model;
// distances evaluate analytically (Euclidean norm, hyperbolic polar law of
// cosines, factors in quadrature).
class RaySpace {
  public:
    using Point = RayPoint;

    explicit RaySpace(Signature sig) : sig_(sig) {}

    const Signature& signature() const { return sig_; }

    double distance(const Point& a, const Point& b) const {
        double d2 = 0.0;
        if (sig_.euclidean_dim > 0) {
            Eigen::VectorXd va = Eigen::VectorXd::Zero(sig_.euclidean_dim);
            Eigen::VectorXd vb = va;
            if (a.xi.direction.size() > 0) va = a.t * std::cos(a.xi.theta) * a.xi.direction;
            if (b.xi.direction.size() > 0) vb = b.t * std::cos(b.xi.theta) * b.xi.direction;
            d2 += (va - vb).squaredNorm();
        }
        if (sig_.hyperbolic) {
            const double sa = a.t * std::sin(a.xi.theta);
            const double sb = b.t * std::sin(b.xi.theta);
            d2 += util::sqr(hyperbolic_polar_distance(sa, sb, a.xi.ideal_angle - b.xi.ideal_angle));
        }
        return std::sqrt(d2);
    }

    Point basepoint() const {
        VisualBoundaryPoint xi;
        xi.direction = Eigen::VectorXd::Zero(sig_.euclidean_dim);
        if (sig_.euclidean_dim > 0) xi.direction(0) = 1.0;
        xi.theta = sig_.euclidean_dim > 0 ? 0.0 : util::kPi / 2.0;
        return {xi, 0.0};
    }

  private:
    Signature sig_;
};

// Parameter of the projection of the point q onto the ray toward xi
// (golden-section minimisation; distance to a point is convex along
// geodesics in CAT(0) spaces).
inline double ray_projection_parameter(const RaySpace& space, const VisualBoundaryPoint& xi, const RayPoint& q,
                                       double t_hi) {
    const double gr = 0.6180339887498948482;
    double lo = 0.0, hi = t_hi;
    double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
    double f1 = space.distance({xi, m1}, q), f2 = space.distance({xi, m2}, q);
    for (int it = 0; it < 200 && hi - lo > 1e-10 * std::max(1.0, t_hi); ++it) {
        if (f1 <= f2) {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - gr * (hi - lo);
            f1 = space.distance({xi, m1}, q);
        } else {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + gr * (hi - lo);
            f2 = space.distance({xi, m2}, q);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace isodyn::cat0
