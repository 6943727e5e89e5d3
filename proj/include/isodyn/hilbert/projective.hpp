#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "isodyn/hilbert/metric.hpp"
#include "isodyn/hilbert/polytope.hpp"

namespace isodyn::hilbert {

// Invertible (n+1)x(n+1) matrix acting on homogeneous coordinates [x; 1].
class ProjectiveMap {
  public:
    explicit ProjectiveMap(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw std::invalid_argument("projective: matrix not square");
        if (std::fabs(m_.determinant()) < 1e-12) throw std::invalid_argument("projective: singular matrix");
    }

    int dim() const { return static_cast<int>(m_.rows()) - 1; }
    const Matrix& matrix() const { return m_; }

    Vector apply(const Vector& x) const {
        if (x.size() + 1 != m_.rows()) throw std::invalid_argument("projective: wrong point dimension");
        Vector h(x.size() + 1);
        h.head(x.size()) = x;
        h(x.size()) = 1.0;
        const Vector img = m_ * h;
        const double w = img(x.size());
        if (std::fabs(w) < 1e-12) throw std::domain_error("projective: image at infinity");
        return img.head(x.size()) / w;
    }

    ProjectiveMap inverse() const { return ProjectiveMap(m_.inverse()); }

    // Conjugated diagonal action fixing the vertices of a simplex; an
    // automorphism of the simplex with unbounded orbits when the multipliers
    // differ.
    static ProjectiveMap simplex_dilation(const Polytope& simplex, const Vector& multipliers) {
        const int n = simplex.dim();
        if (static_cast<int>(simplex.vertices().size()) != n + 1)
            throw std::invalid_argument("projective: polytope is not a simplex");
        if (multipliers.size() != n + 1) throw std::invalid_argument("projective: need dim+1 multipliers");
        Matrix frame(n + 1, n + 1);
        for (int i = 0; i <= n; ++i) {
            frame.col(i).head(n) = simplex.vertices()[i];
            frame(n, i) = 1.0;
        }
        return ProjectiveMap(frame * multipliers.asDiagonal() * frame.inverse());
    }

  private:
    Matrix m_;
};

// g is accepted as an automorphism when it permutes the vertex set.
inline bool is_automorphism(const Polytope& p, const ProjectiveMap& g) {
    if (g.dim() != p.dim()) return false;
    const auto& verts = p.vertices();
    std::vector<bool> hit(verts.size(), false);
    for (const auto& v : verts) {
        Vector img;
        try {
            img = g.apply(v);
        } catch (const std::domain_error&) {
            return false;
        }
        bool matched = false;
        for (std::size_t j = 0; j < verts.size(); ++j) {
            if (!hit[j] && (verts[j] - img).norm() < 1e-9) {
                hit[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

// true iff the orbit g^k x0 leaves the Hilbert ball of the given radius
// within n steps
inline bool automorphism_orbit_unbounded(const Polytope& p, const ProjectiveMap& g, const Vector& x0,
                                         int n, double threshold) {
    if (!is_automorphism(p, g))
        throw std::invalid_argument("projective: map is not an automorphism of the polytope");
    if (!p.strictly_inside(x0)) throw std::domain_error("projective: x0 not interior");
    Vector x = x0;
    for (int k = 1; k <= n; ++k) {
        x = g.apply(x);
        if (hilbert_distance(p, x0, x) > threshold) return true;
    }
    return false;
}

}  // namespace isodyn::hilbert
