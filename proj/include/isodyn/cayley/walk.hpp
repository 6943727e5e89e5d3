#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "isodyn/cayley/group.hpp"
#include "isodyn/cayley/halfspace.hpp"
#include "isodyn/util/rng.hpp"

namespace isodyn::cayley {

// Trajectory u(n) of a right random walk with uniform increments from the
// symmetric generator list; u(0) = e, u(n) = u(n-1) w(n). Deterministic given
// the seed.
template <typename Element>
struct WalkRecord {
    std::vector<int> increments;       // indices into generators()
    std::vector<Element> elements;     // u(0) .. u(n)
    std::vector<std::int64_t> lengths; // a(n) = |u(n)|
    std::uint64_t seed = 0;
};

template <GroupModel G>
WalkRecord<typename G::Element> random_walk(const G& group, std::size_t steps, std::uint64_t seed) {
    if (steps < 1) throw std::invalid_argument("random_walk: need at least one step");
    const auto& gens = group.generators();
    WalkRecord<typename G::Element> rec;
    rec.seed = seed;
    rec.increments.reserve(steps);
    rec.elements.reserve(steps + 1);
    rec.lengths.reserve(steps + 1);
    util::Rng rng(seed);
    rec.elements.push_back(group.identity());
    rec.lengths.push_back(0);
    for (std::size_t n = 1; n <= steps; ++n) {
        const int idx = static_cast<int>(rng.uniform_index(gens.size()));
        rec.increments.push_back(idx);
        rec.elements.push_back(group.multiply(rec.elements.back(), gens[static_cast<std::size_t>(idx)]));
        rec.lengths.push_back(group.length(rec.elements.back(), kDefaultLengthBudget).value_or(-1));
    }
    return rec;
}

// Indices n whose trajectory point stays metrically ahead of every earlier
// point beyond the burn-in K: d(u(k), u(n)) < a(n) + C for all K < k < n.
// Quadratic scan over the stored elements.
template <GroupModel G>
std::vector<std::size_t> walk_special_indices(const G& group, const WalkRecord<typename G::Element>& rec,
                                              std::int64_t slack, std::size_t burn_in) {
    if (slack < 0) throw std::invalid_argument("walk_special_indices: negative slack");
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < rec.elements.size(); ++n) {
        bool special = true;
        for (std::size_t k = burn_in + 1; k + 1 <= n && special; ++k) {
            const auto d = group.distance(rec.elements[k], rec.elements[n], kDefaultLengthBudget);
            if (!d || *d >= rec.lengths[n] + slack) special = false;
        }
        if (special) out.push_back(n);
    }
    return out;
}

// Free-group overload. d(u(k), u(n)) = a(k) + a(n) - 2 lcp(u(k), u(n)), and
// the lcp against a fixed u(n) updates in O(1) per backward step because
// consecutive trajectory words differ by one trailing letter. Total O(n^2)
// instead of the O(n^3) letter comparisons of the generic route.
inline std::vector<std::size_t> walk_special_indices(const FreeGroup&,
                                                     const WalkRecord<FreeGroup::Element>& rec,
                                                     std::int64_t slack, std::size_t burn_in) {
    if (slack < 0) throw std::invalid_argument("walk_special_indices: negative slack");
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < rec.elements.size(); ++n) {
        const auto& wn = rec.elements[n];
        bool special = true;
        std::size_t cp = wn.size();  // lcp(u(j), u(n)), maintained as j descends
        for (std::size_t j = n; j-- > 0;) {
            const auto& wj = rec.elements[j];
            if (wj.size() + 1 == rec.elements[j + 1].size()) {
                cp = std::min(cp, wj.size());  // u(j) is a prefix of u(j+1)
            } else {
                // u(j+1) is a prefix of u(j); u(j) carries one extra letter
                const std::size_t base = rec.elements[j + 1].size();
                if (cp >= base) cp = base + (wn.size() > base && wn[base] == wj[base] ? 1 : 0);
            }
            if (j > burn_in &&
                static_cast<std::int64_t>(wj.size()) - 2 * static_cast<std::int64_t>(cp) >= slack) {
                special = false;
                break;
            }
        }
        if (special) out.push_back(n);
    }
    return out;
}

struct WitnessSummary {
    std::vector<std::size_t> special_indices;
    std::size_t best_index = 0;     // special index with the widest verified range
    std::size_t best_range = 0;     // number of k in (K, n_i) verified for it
    bool best_covers_all = false;   // that range is the whole (K, n_i)
    bool common_witness_full = false;  // some u(n_i) lies in every halfspace H(u(k), C), K < k < n_max
};

// Verifies the halfspace membership u(n_i) in H(u(k), C) for K < k < n_i
// (halfspace around u(k) with basepoint e) directly against the metric,
// starting from the deepest special index and stopping at the first one that
// covers its whole range; also checks whether that point stays a member for
// every k up to the end of the walk.
template <GroupModel G>
WitnessSummary halfspace_intersection_experiment(const G& group, const WalkRecord<typename G::Element>& rec,
                                                 std::int64_t slack, std::size_t burn_in) {
    if (rec.elements.size() < burn_in + 10)
        throw std::invalid_argument("halfspace experiment: record too short for the burn-in");
    WitnessSummary sum;
    sum.special_indices = walk_special_indices(group, rec, slack, burn_in);
    const std::size_t n_max = rec.elements.size() - 1;
    for (auto it = sum.special_indices.rbegin(); it != sum.special_indices.rend(); ++it) {
        const std::size_t ni = *it;
        if (ni <= burn_in + 1) break;  // nothing left to witness
        std::size_t verified = 0;
        for (std::size_t k = burn_in + 1; k < ni; ++k) {
            const auto d = group.distance(rec.elements[k], rec.elements[ni], kDefaultLengthBudget);
            if (d && *d <= rec.lengths[ni] + slack)
                ++verified;
            else
                break;
        }
        const bool covers = verified == ni - burn_in - 1;
        if (verified > sum.best_range) {
            sum.best_range = verified;
            sum.best_index = ni;
            sum.best_covers_all = covers;
        }
        if (!covers) continue;
        bool full = true;
        for (std::size_t k = ni + 1; k <= n_max && full; ++k) {
            const auto d = group.distance(rec.elements[k], rec.elements[ni], kDefaultLengthBudget);
            if (!d || *d > rec.lengths[ni] + slack) full = false;
        }
        if (full) sum.common_witness_full = true;
        break;  // deepest fully covering witness found
    }
    return sum;
}

// a(n)/n for the last index; the walks used here have unit-length generators
template <typename Element>
double escape_speed(const WalkRecord<Element>& rec) {
    const std::size_t n = rec.elements.size() - 1;
    return n == 0 ? 0.0 : static_cast<double>(rec.lengths[n]) / static_cast<double>(n);
}

}  // namespace isodyn::cayley
