#pragma once

#include <cstdint>
#include <optional>

#include "isodyn/cayley/group.hpp"

namespace isodyn::cayley {

enum class Tribool { False, True, Unknown };

inline constexpr std::int64_t kDefaultLengthBudget = 1 << 20;

template <GroupModel G>
std::optional<std::int64_t> word_length(const G& group, const typename G::Element& g,
                                        std::int64_t budget = kDefaultLengthBudget) {
    return group.length(g, budget);
}

// z lies in the halfspace of g around the identity basepoint iff
// d(z, g) = |z^{-1} g| <= |z| + slack. Unknown when a length exceeds the
// search budget.
template <GroupModel G>
Tribool cayley_halfspace_contains(const G& group, const typename G::Element& g,
                                  const typename G::Element& z, std::int64_t slack,
                                  std::int64_t budget = kDefaultLengthBudget) {
    const auto dzg = group.distance(z, g, budget);
    const auto lz = group.length(z, budget);
    if (!dzg || !lz) return Tribool::Unknown;
    return *dzg <= *lz + slack ? Tribool::True : Tribool::False;
}

}  // namespace isodyn::cayley
