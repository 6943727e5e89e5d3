#pragma once

#include <deque>
#include <vector>

#include "isodyn/core/halfspace.hpp"
#include "isodyn/hilbert/metric.hpp"
#include "isodyn/hilbert/polytope.hpp"

namespace isodyn::hilbert {

// Star(xi): union of the closed faces containing the minimal face of xi.
// The indices returned point into polytope.faces().
inline std::vector<int> star_of(const Polytope& p, const Vector& xi) {
    const Face& f = p.face(p.minimal_face(xi));
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(p.faces().size()); ++i)
        if ((p.faces()[i].verts & f.verts) == f.verts) out.push_back(i);
    return out;
}

// eta lies in Star(xi) iff the two minimal faces lie in a common facet. The
// relation is symmetric, so the chain relation below needs no or-of-two-sides.
inline bool shares_facet(const Face& f, const Face& g) {
    for (int a : f.facets)
        for (int b : g.facets)
            if (a == b) return true;
    return false;
}

inline bool star_contains(const Polytope& p, const Vector& xi, const Vector& eta) {
    return shares_facet(p.face(p.minimal_face(xi)), p.face(p.minimal_face(eta)));
}

// Minimal chain length between the faces in the shares-facet graph; 0 when the
// minimal faces coincide (equal stars).
inline int star_distance_faces(const Polytope& p, int from, int to) {
    if (from == to) return 0;
    const int n = static_cast<int>(p.faces().size());
    std::vector<int> dist(n, -1);
    std::deque<int> queue;
    dist[from] = 0;
    queue.push_back(from);
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        for (int next = 0; next < n; ++next) {
            if (dist[next] >= 0 || !shares_facet(p.faces()[cur], p.faces()[next])) continue;
            dist[next] = dist[cur] + 1;
            if (next == to) return dist[next];
            queue.push_back(next);
        }
    }
    return -1;  // unreachable; does not happen for connected boundaries
}

inline int star_distance(const Polytope& p, const Vector& xi, const Vector& eta) {
    return star_distance_faces(p, p.minimal_face(xi), p.minimal_face(eta));
}

// max star-chain distance over the canonical face representatives
inline int simplicial_diameter(const Polytope& p) {
    const int n = static_cast<int>(p.faces().size());
    int best = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) best = std::max(best, star_distance_faces(p, i, j));
    return best;
}

// Finite-scale halfspace rendering of star membership: witnesses approach xi
// along the segment from the centroid; the tested point approaches eta along
// the segment from the centroid and along the segment from a near-xi anchor
// (membership through a shared facet is realized by approaches that hug that
// facet, which the centroid segment misses for some pairs). Member iff either
// approach lands in the halfspace. In the member case the distances agree
// only up to O(e^{-2(T-s)}), so the comparison carries a tie band wider than
// the metric tolerance; the non-member gap is the witness radius minus the
// slack, which dwarfs it.
inline bool star_membership_sampled(const Polytope& p, const Vector& xi, const Vector& eta,
                                    double witness_radius = 5.0, double test_radius = 10.0,
                                    double slack = 0.0) {
    HilbertModel model{&p};
    const Vector anchor = point_toward(p, xi, witness_radius);
    std::vector<Vector> witnesses{anchor, point_toward(p, xi, witness_radius + 1.0)};
    core::HalfspaceSpec<Vector> spec{std::move(witnesses), slack, model.basepoint()};
    for (const Vector& z : {point_toward(p, eta, test_radius), point_along(p, anchor, eta, test_radius)})
        if (core::halfspace_contains(model, spec, z, 1e-6)) return true;
    return false;
}

}  // namespace isodyn::hilbert
