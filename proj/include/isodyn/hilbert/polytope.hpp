#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "isodyn/util/numeric.hpp"

namespace isodyn::hilbert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VertexMask = std::uint64_t;  // at most 64 vertices

inline constexpr double kActiveTol = 1e-9;    // residual below which a constraint counts as active
inline constexpr double kAmbiguousTol = 1e-7; // residuals in (active, ambiguous) are rejected

// A proper nonempty face: its vertices, the facets containing it, and its
// affine dimension.
struct Face {
    VertexMask verts = 0;
    std::vector<int> facets;
    int dim = 0;
};

// Bounded full-dimensional convex polytope carrying both representations and
// the full face lattice. Vertex count is capped at 64 and the dimension at 4;
// facet enumeration is brute force over vertex subsets, which is fine at that
// scale.
class Polytope {
  public:
    static Polytope from_vertices(std::vector<Vector> vertices) { return Polytope(std::move(vertices)); }

    static Polytope from_halfspaces(const Matrix& a, const Vector& b) {
        const int n = static_cast<int>(a.cols());
        const int m = static_cast<int>(a.rows());
        if (n < 1 || n > 4) throw std::invalid_argument("polytope: dimension must be 1..4");
        std::vector<Vector> verts;
        std::vector<int> idx(n);
        // vertices = feasible intersections of n constraints
        auto visit = [&](const std::vector<int>& sel) {
            Matrix sys(n, n);
            Vector rhs(n);
            for (int i = 0; i < n; ++i) {
                sys.row(i) = a.row(sel[i]);
                rhs(i) = b(sel[i]);
            }
            Eigen::FullPivLU<Matrix> lu(sys);
            if (lu.rank() < n) return;
            Vector x = lu.solve(rhs);
            for (int i = 0; i < m; ++i)
                if (a.row(i).dot(x) > b(i) + 1e-7) return;
            for (const auto& v : verts)
                if ((v - x).norm() < 1e-7) return;
            verts.push_back(x);
        };
        enumerate_subsets(m, n, idx, 0, 0, visit);
        if (verts.size() > 64) throw std::invalid_argument("polytope: more than 64 vertices");
        Polytope p(std::move(verts));
        // every input constraint must be supported or redundant for the same set
        for (int i = 0; i < m; ++i) {
            double mx = -1e300;
            for (const auto& v : p.vertices_) mx = std::max(mx, a.row(i).dot(v));
            if (mx > b(i) + 1e-7)
                throw std::invalid_argument("polytope: inconsistent H-representation");
        }
        return p;
    }

    int dim() const { return n_; }
    const std::vector<Vector>& vertices() const { return vertices_; }
    const Matrix& normals() const { return a_; }
    const Vector& offsets() const { return b_; }
    int facet_count() const { return static_cast<int>(a_.rows()); }
    const std::vector<Face>& faces() const { return faces_; }
    const Vector& centroid() const { return centroid_; }

    // signed slack b_i - a_i . x of every constraint (positive inside)
    Vector residuals(const Vector& x) const {
        if (x.size() != n_) throw std::invalid_argument("polytope: wrong point dimension");
        return b_ - a_ * x;
    }

    bool strictly_inside(const Vector& x, double margin = 1e-12) const {
        return residuals(x).minCoeff() > margin;
    }

    // Index (into faces()) of the unique face whose active-constraint set is
    // carried by the boundary point. Interior and exterior points, and points
    // in the ambiguity band between strata, are rejected.
    int minimal_face(const Vector& xi) const {
        const Vector r = residuals(xi);
        VertexMask mask = ~VertexMask(0);
        bool any = false;
        for (int i = 0; i < r.size(); ++i) {
            if (r(i) < -kActiveTol) throw std::domain_error("polytope: point outside");
            if (r(i) <= kActiveTol) {
                mask &= facet_masks_[i];
                any = true;
            } else if (r(i) < kAmbiguousTol) {
                throw std::domain_error("polytope: boundary classification ambiguous");
            }
        }
        if (!any) throw std::domain_error("polytope: interior point has no face");
        const auto it = face_by_mask_.find(mask);
        if (it == face_by_mask_.end()) throw std::logic_error("polytope: face lattice lookup failed");
        return it->second;
    }

    const Face& face(int index) const { return faces_.at(static_cast<std::size_t>(index)); }

    // relative-interior representative (vertex average)
    Vector face_representative(int index) const {
        const Face& f = face(index);
        Vector acc = Vector::Zero(n_);
        int count = 0;
        for (int v = 0; v < static_cast<int>(vertices_.size()); ++v)
            if (f.verts & (VertexMask(1) << v)) {
                acc += vertices_[v];
                ++count;
            }
        return acc / count;
    }

    VertexMask facet_mask(int facet) const { return facet_masks_.at(static_cast<std::size_t>(facet)); }

  private:
    explicit Polytope(std::vector<Vector> vertices) : vertices_(std::move(vertices)) {
        if (vertices_.empty()) throw std::invalid_argument("polytope: no vertices");
        if (vertices_.size() > 64) throw std::invalid_argument("polytope: more than 64 vertices");
        n_ = static_cast<int>(vertices_[0].size());
        if (n_ < 1 || n_ > 4) throw std::invalid_argument("polytope: dimension must be 1..4");
        for (const auto& v : vertices_)
            if (v.size() != n_) throw std::invalid_argument("polytope: mixed vertex dimensions");
        centroid_ = Vector::Zero(n_);
        for (const auto& v : vertices_) centroid_ += v;
        centroid_ /= static_cast<double>(vertices_.size());
        if (affine_rank(vertices_) < n_) throw std::invalid_argument("polytope: not full-dimensional");
        drop_interior_points();
        build_facets();
        build_lattice();
        validate();
    }

    template <typename F>
    static void enumerate_subsets(int m, int k, std::vector<int>& idx, int depth, int start, F&& visit) {
        if (depth == k) {
            visit(idx);
            return;
        }
        for (int i = start; i <= m - (k - depth); ++i) {
            idx[depth] = i;
            enumerate_subsets(m, k, idx, depth + 1, i + 1, visit);
        }
    }

    static int affine_rank(const std::vector<Vector>& pts) {
        if (pts.size() < 2) return 0;
        Matrix d(pts.size() - 1, pts[0].size());
        for (std::size_t i = 1; i < pts.size(); ++i) d.row(i - 1) = (pts[i] - pts[0]).transpose();
        return Eigen::FullPivLU<Matrix>(d).rank();
    }

    void drop_interior_points() {
        std::vector<Vector> uniq;
        for (const auto& v : vertices_) {
            bool dup = false;
            for (const auto& u : uniq)
                if ((u - v).norm() < 1e-9) dup = true;
            if (!dup) uniq.push_back(v);
        }
        vertices_ = std::move(uniq);
    }

    void build_facets() {
        const int m = static_cast<int>(vertices_.size());
        std::vector<std::pair<Vector, double>> found;
        std::vector<int> idx(n_);
        auto visit = [&](const std::vector<int>& sel) {
            // hyperplane through the selected vertices
            Matrix d(n_ - 1 >= 1 ? n_ - 1 : 1, n_);
            if (n_ == 1) {
                // facets of an interval are its endpoints
            } else {
                for (int i = 1; i < n_; ++i) d.row(i - 1) = (vertices_[sel[i]] - vertices_[sel[0]]).transpose();
            }
            Vector normal(n_);
            if (n_ == 1) {
                normal(0) = 1.0;
            } else {
                Eigen::FullPivLU<Matrix> lu(d);
                if (lu.rank() < n_ - 1) return;  // affinely dependent selection
                const Matrix ker = lu.kernel();
                if (ker.cols() < 1) return;
                normal = ker.col(0);
            }
            double nn = normal.norm();
            if (nn < 1e-12) return;
            normal /= nn;
            double offset = normal.dot(vertices_[sel[0]]);
            // orient outward and confirm all vertices on one side
            int above = 0, below = 0;
            for (const auto& v : vertices_) {
                const double s = normal.dot(v) - offset;
                if (s > 1e-9) ++above;
                if (s < -1e-9) ++below;
            }
            if (above > 0 && below > 0) return;
            if (above > 0) {
                normal = -normal;
                offset = -offset;
            }
            for (const auto& [en, eo] : found)
                if (en.dot(normal) > 1.0 - 1e-9 && std::fabs(eo - offset) < 1e-9) return;
            found.emplace_back(normal, offset);
        };
        enumerate_subsets(m, n_, idx, 0, 0, visit);
        if (found.empty()) throw std::invalid_argument("polytope: facet enumeration failed");

        a_.resize(static_cast<int>(found.size()), n_);
        b_.resize(static_cast<int>(found.size()));
        for (int i = 0; i < a_.rows(); ++i) {
            a_.row(i) = found[i].first.transpose();
            b_(i) = found[i].second;
        }

        facet_masks_.assign(found.size(), 0);
        for (int i = 0; i < a_.rows(); ++i)
            for (int v = 0; v < m; ++v)
                if (std::fabs(a_.row(i).dot(vertices_[v]) - b_(i)) <= kActiveTol)
                    facet_masks_[i] |= VertexMask(1) << v;
    }

    void build_lattice() {
        std::vector<VertexMask> masks(facet_masks_.begin(), facet_masks_.end());
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
        // close under intersection
        bool grew = true;
        while (grew) {
            grew = false;
            const std::size_t sz = masks.size();
            for (std::size_t i = 0; i < sz; ++i)
                for (std::size_t j = i + 1; j < sz; ++j) {
                    const VertexMask inter = masks[i] & masks[j];
                    if (inter == 0) continue;
                    if (std::find(masks.begin(), masks.end(), inter) == masks.end()) {
                        masks.push_back(inter);
                        grew = true;
                    }
                }
            if (grew) {
                std::sort(masks.begin(), masks.end());
                masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
            }
        }
        for (VertexMask mask : masks) {
            Face f;
            f.verts = mask;
            for (int i = 0; i < static_cast<int>(facet_masks_.size()); ++i)
                if ((facet_masks_[i] & mask) == mask) f.facets.push_back(i);
            std::vector<Vector> pts;
            for (int v = 0; v < static_cast<int>(vertices_.size()); ++v)
                if (mask & (VertexMask(1) << v)) pts.push_back(vertices_[v]);
            f.dim = affine_rank(pts);
            face_by_mask_[mask] = static_cast<int>(faces_.size());
            faces_.push_back(std::move(f));
        }
    }

    void validate() const {
        if (!strictly_inside(centroid_, 1e-9))
            throw std::invalid_argument("polytope: centroid not interior");
        for (const auto& v : vertices_) {
            const Vector r = residuals(v);
            if (r.minCoeff() < -kActiveTol)
                throw std::invalid_argument("polytope: vertex violates a constraint");
            // an extreme point of a full-dimensional polytope lies on >= dim facets
            int active = 0;
            for (int i = 0; i < r.size(); ++i)
                if (r(i) <= kActiveTol) ++active;
            if (active < n_) throw std::invalid_argument("polytope: input point is not a vertex");
        }
        for (int i = 0; i < static_cast<int>(facet_masks_.size()); ++i) {
            std::vector<Vector> pts;
            for (int v = 0; v < static_cast<int>(vertices_.size()); ++v)
                if (facet_masks_[i] & (VertexMask(1) << v)) pts.push_back(vertices_[v]);
            if (affine_rank(pts) != n_ - 1)
                throw std::invalid_argument("polytope: facet not spanned by its vertices");
        }
        // lattice closure
        for (const auto& f : faces_)
            for (const auto& g : faces_) {
                const VertexMask inter = f.verts & g.verts;
                if (inter != 0 && face_by_mask_.find(inter) == face_by_mask_.end())
                    throw std::logic_error("polytope: lattice not closed under intersection");
            }
    }

    int n_ = 0;
    std::vector<Vector> vertices_;
    Matrix a_;
    Vector b_;
    Vector centroid_;
    std::vector<VertexMask> facet_masks_;
    std::vector<Face> faces_;
    std::map<VertexMask, int> face_by_mask_;
};

// ---- stock polytopes used across tests and the CLI corpus ----

inline Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

inline Polytope make_square() {
    return Polytope::from_vertices({vec({1, 1}), vec({1, -1}), vec({-1, 1}), vec({-1, -1})});
}

inline Polytope make_triangle() {
    return Polytope::from_vertices({vec({0, 0}), vec({1, 0}), vec({0, 1})});
}

inline Polytope make_simplex(int d) {
    std::vector<Vector> vs;
    vs.push_back(Vector::Zero(d));
    for (int i = 0; i < d; ++i) {
        Vector v = Vector::Zero(d);
        v(i) = 1.0;
        vs.push_back(v);
    }
    return Polytope::from_vertices(std::move(vs));
}

inline Polytope make_cube() {
    std::vector<Vector> vs;
    for (int s = 0; s < 8; ++s)
        vs.push_back(vec({s & 1 ? 1.0 : -1.0, s & 2 ? 1.0 : -1.0, s & 4 ? 1.0 : -1.0}));
    return Polytope::from_vertices(std::move(vs));
}

inline Polytope make_regular_polygon(int k) {
    std::vector<Vector> vs;
    for (int i = 0; i < k; ++i) {
        const double a = 2.0 * util::kPi * i / k;
        vs.push_back(vec({std::cos(a), std::sin(a)}));
    }
    return Polytope::from_vertices(std::move(vs));
}

// square base at height 1, apex at the origin; the cross-section of the
// product of the square cone with a ray, so it carries a one-parameter group
// of projective automorphisms fixing every vertex
inline Polytope make_square_pyramid() {
    return Polytope::from_vertices(
        {vec({1, 1, 1}), vec({1, -1, 1}), vec({-1, 1, 1}), vec({-1, -1, 1}), vec({0, 0, 0})});
}

inline Polytope make_prism() {
    std::vector<Vector> vs;
    for (double z : {0.0, 1.0}) {
        vs.push_back(vec({0, 0, z}));
        vs.push_back(vec({1, 0, z}));
        vs.push_back(vec({0, 1, z}));
    }
    return Polytope::from_vertices(std::move(vs));
}

inline Polytope make_quadrilateral() {
    return Polytope::from_vertices({vec({0, 0}), vec({2, 0}), vec({1.7, 1.3}), vec({-0.2, 0.9})});
}

}  // namespace isodyn::hilbert
