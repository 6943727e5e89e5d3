#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "isodyn/cayley/group.hpp"
#include "isodyn/cayley/halfspace.hpp"

namespace isodyn::cayley {

enum class PingPongVerdict { CertifiedOnBall, FailsWithWitness, Inconclusive };

template <typename Element>
struct PingPongReport {
    PingPongVerdict verdict = PingPongVerdict::Inconclusive;
    std::optional<Element> witness;  // set when the criterion fails
    int radius = 0;
    std::size_t ball_size = 0;       // elements of <g,h> enumerated
};

namespace detail {
template <typename Element, typename Hash>
struct BallEnumerator {
    std::vector<Element> order;
    std::unordered_map<Element, int, Hash> depth;
};
}  // namespace detail

// Freeness criterion on the ball of radius R in the subgroup generated by g
// and h: every enumerated element a must have min(|a g|, |a g^{-1}|) > |a| or
// min(|a h|, |a h^{-1}|) > |a|, lengths taken in the ambient word metric
// (|x y^{+-1}| = min over both signs). Certification is a ball-local
// statement, not a proof of freeness.
template <GroupModel G, typename Hash>
PingPongReport<typename G::Element> pingpong_check_hashed(const G& group, const typename G::Element& g,
                                                          const typename G::Element& h, int radius,
                                                          std::int64_t budget, Hash) {
    using Element = typename G::Element;
    if (radius < 2) throw std::invalid_argument("pingpong: radius must be >= 2");
    const Element e = group.identity();
    for (const Element* x : {&g, &h}) {
        if (*x == e || group.multiply(*x, *x) == e)
            throw std::invalid_argument("pingpong: generator of order < 3");
    }

    PingPongReport<Element> rep;
    rep.radius = radius;

    const std::vector<Element> lambda_gens{g, group.invert(g), h, group.invert(h)};
    std::unordered_map<Element, int, Hash> depth;
    std::vector<Element> order{e};
    depth.emplace(e, 0);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const Element cur = order[head];
        const int d = depth.at(cur);
        if (d >= radius) continue;
        for (const Element& s : lambda_gens) {
            Element nxt = group.multiply(cur, s);
            if (depth.emplace(nxt, d + 1).second) order.push_back(std::move(nxt));
        }
    }
    rep.ball_size = order.size();

    for (const Element& a : order) {
        const auto la = group.length(a, budget);
        if (!la) {
            rep.verdict = PingPongVerdict::Inconclusive;
            rep.witness = a;
            return rep;
        }
        bool clause_ok = false;
        for (const Element* t : {&g, &h}) {
            const auto l1 = group.length(group.multiply(a, *t), budget);
            const auto l2 = group.length(group.multiply(a, group.invert(*t)), budget);
            if (!l1 || !l2) {
                rep.verdict = PingPongVerdict::Inconclusive;
                rep.witness = a;
                return rep;
            }
            if (std::min(*l1, *l2) > *la) {
                clause_ok = true;
                break;
            }
        }
        if (!clause_ok) {
            rep.verdict = PingPongVerdict::FailsWithWitness;
            rep.witness = a;
            return rep;
        }
    }
    rep.verdict = PingPongVerdict::CertifiedOnBall;
    return rep;
}

template <typename E>
struct VectorElementHash {
    std::size_t operator()(const E& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : v) {
            h ^= static_cast<std::uint64_t>(static_cast<std::int64_t>(x));
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

inline PingPongReport<FreeGroup::Element> pingpong_check(const FreeGroup& group, const FreeGroup::Element& g,
                                                         const FreeGroup::Element& h, int radius,
                                                         std::int64_t budget = kDefaultLengthBudget) {
    return pingpong_check_hashed(group, g, h, radius, budget, VectorElementHash<FreeGroup::Element>{});
}

inline PingPongReport<FreeAbelian::Element> pingpong_check(const FreeAbelian& group,
                                                           const FreeAbelian::Element& g,
                                                           const FreeAbelian::Element& h, int radius,
                                                           std::int64_t budget = kDefaultLengthBudget) {
    return pingpong_check_hashed(group, g, h, radius, budget, VectorElementHash<FreeAbelian::Element>{});
}

inline PingPongReport<IntMatrix> pingpong_check(const MatrixGroup& group, const IntMatrix& g,
                                                const IntMatrix& h, int radius,
                                                std::int64_t budget = kDefaultLengthBudget) {
    return pingpong_check_hashed(group, g, h, radius, budget, IntMatrixHash{});
}

// Re-evaluates the four lengths of a reported witness; true when the witness
// indeed violates the criterion.
template <GroupModel G>
bool verify_pingpong_witness(const G& group, const typename G::Element& g, const typename G::Element& h,
                             const typename G::Element& a, std::int64_t budget = kDefaultLengthBudget) {
    const auto la = group.length(a, budget);
    if (!la) return false;
    for (const auto* t : {&g, &h}) {
        const auto l1 = group.length(group.multiply(a, *t), budget);
        const auto l2 = group.length(group.multiply(a, group.invert(*t)), budget);
        if (!l1 || !l2) return false;
        if (std::min(*l1, *l2) > *la) return false;
    }
    return true;
}

}  // namespace isodyn::cayley
