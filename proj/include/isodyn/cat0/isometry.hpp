#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "isodyn/cat0/boundary.hpp"
#include "isodyn/cat0/model.hpp"
#include "isodyn/disk/poincare.hpp"
#include "isodyn/util/numeric.hpp"

namespace isodyn::cat0 {

enum class H2IsometryClass { Elliptic, Parabolic, Hyperbolic };

struct H2Classification {
    H2IsometryClass kind;
    double translation_length = 0.0;  // nonzero only for the hyperbolic class
};

// Euclidean part (orthogonal matrix + translation) and/or an SL(2,R) matrix
// acting on the upper half-plane, conjugated to the disk by the Cayley map.
class Cat0Isometry {
  public:
    struct EuclideanPart {
        Eigen::MatrixXd rotation;
        Eigen::VectorXd translation;
    };

    Cat0Isometry() = default;

    static Cat0Isometry euclidean(const Eigen::MatrixXd& q, const Eigen::VectorXd& t) {
        Cat0Isometry g;
        g.set_euclidean(q, t);
        return g;
    }

    static Cat0Isometry h2(const Eigen::Matrix2d& sl2) {
        Cat0Isometry g;
        g.set_h2(sl2);
        return g;
    }

    static Cat0Isometry product(const Eigen::MatrixXd& q, const Eigen::VectorXd& t, const Eigen::Matrix2d& sl2) {
        Cat0Isometry g;
        g.set_euclidean(q, t);
        g.set_h2(sl2);
        return g;
    }

    void set_euclidean(const Eigen::MatrixXd& q, const Eigen::VectorXd& t) {
        if (q.rows() != q.cols() || q.rows() != t.size())
            throw std::invalid_argument("isometry: inconsistent Euclidean part");
        const double defect = (q.transpose() * q - Eigen::MatrixXd::Identity(q.rows(), q.cols())).norm();
        if (defect > 1e-9) throw std::invalid_argument("isometry: matrix not orthogonal");
        euc_ = EuclideanPart{q, t};
    }

    void set_h2(const Eigen::Matrix2d& m) {
        if (std::fabs(m.determinant() - 1.0) > 1e-9)
            throw std::invalid_argument("isometry: SL(2,R) matrix must have determinant 1");
        sl2_ = m;
        disk_ = to_disk(m);
    }

    const std::optional<EuclideanPart>& euclidean_part() const { return euc_; }
    const std::optional<Eigen::Matrix2d>& h2_part() const { return sl2_; }
    const disk::MoebiusDisk& disk_action() const {
        if (!sl2_) throw std::logic_error("isometry: no hyperbolic part");
        return disk_;
    }

    Cat0Point apply(const Signature& sig, const Cat0Point& p) const {
        Cat0Point out = p;
        if (sig.euclidean_dim > 0) {
            if (!euc_) throw std::invalid_argument("isometry: missing Euclidean part");
            out.euc = euc_->rotation * p.euc + euc_->translation;
        }
        if (sig.hyperbolic) {
            if (!sl2_) throw std::invalid_argument("isometry: missing hyperbolic part");
            out.hyp = disk_.apply(p.hyp);
        }
        return out;
    }

    // Induced action on the visual boundary: translations fix flat directions,
    // the Moebius action moves ideal angles, the mixing angle is preserved.
    VisualBoundaryPoint apply_boundary(const Signature& sig, const VisualBoundaryPoint& xi) const {
        validate_boundary(sig, xi);
        VisualBoundaryPoint out = xi;
        if (sig.euclidean_dim > 0 && xi.direction.size() > 0 && euc_) out.direction = euc_->rotation * xi.direction;
        if (sig.hyperbolic && xi.theta > 1e-12 && sl2_) out.ideal_angle = disk_.apply_boundary(xi.ideal_angle);
        return out;
    }

    Cat0Isometry inverse() const {
        Cat0Isometry g;
        if (euc_) g.set_euclidean(euc_->rotation.transpose(), -(euc_->rotation.transpose() * euc_->translation));
        if (sl2_) {
            Eigen::Matrix2d inv;
            inv << (*sl2_)(1, 1), -(*sl2_)(0, 1), -(*sl2_)(1, 0), (*sl2_)(0, 0);
            g.set_h2(inv);
        }
        return g;
    }

  private:
    static disk::MoebiusDisk to_disk(const Eigen::Matrix2d& m) {
        // Conjugation by the Cayley map z = (w - i)/(w + i).
        const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
        disk::MoebiusDisk f;
        f.a = Complex(c - b, a + d);
        f.b = Complex(b + c, a - d);
        f.c = Complex(-(b + c), a - d);
        f.d = Complex(b - c, a + d);
        return f;
    }

    std::optional<EuclideanPart> euc_;
    std::optional<Eigen::Matrix2d> sl2_;
    disk::MoebiusDisk disk_{};
};

// Trace classification; hyperbolic translation length 2 arccosh(|tr|/2).
inline H2Classification classify_isometry_h2(const Cat0Isometry& g) {
    if (!g.h2_part()) throw std::invalid_argument("classify: isometry has no hyperbolic part");
    const Eigen::Matrix2d& m = *g.h2_part();
    // +-identity acts trivially: a rotation by 0, not a parabolic
    if ((m - Eigen::Matrix2d::Identity()).norm() < 1e-9 || (m + Eigen::Matrix2d::Identity()).norm() < 1e-9)
        return {H2IsometryClass::Elliptic, 0.0};
    const double tr = std::fabs(m.trace());
    if (tr < 2.0 - 1e-9) return {H2IsometryClass::Elliptic, 0.0};
    if (tr <= 2.0 + 1e-9) return {H2IsometryClass::Parabolic, 0.0};
    return {H2IsometryClass::Hyperbolic, 2.0 * std::acosh(0.5 * tr)};
}

// Common SL(2,R) elements (upper half-plane picture).
inline Eigen::Matrix2d sl2_translation(double c) {  // w -> w + c, parabolic
    Eigen::Matrix2d m;
    m << 1.0, c, 0.0, 1.0;
    return m;
}

inline Eigen::Matrix2d sl2_dilation(double lambda) {  // w -> lambda^2 w, hyperbolic
    Eigen::Matrix2d m;
    m << lambda, 0.0, 0.0, 1.0 / lambda;
    return m;
}

inline Eigen::Matrix2d sl2_rotation(double alpha) {  // elliptic around i
    Eigen::Matrix2d m;
    m << std::cos(alpha), std::sin(alpha), -std::sin(alpha), std::cos(alpha);
    return m;
}

}  // namespace isodyn::cat0
