#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace isodyn::core {

// Indices n whose length strictly dominates every earlier length up to the
// additive constant C: lengths[n] > lengths[m] - C for all m < n. Index 0 is
// vacuously included when the sequence is nonempty. Divergence filtering is
// the caller's business.
inline std::vector<std::size_t> detect_special_indices(std::span<const double> lengths, double slack) {
    if (slack < 0.0) throw std::invalid_argument("detect_special_indices: negative slack");
    std::vector<std::size_t> out;
    double running_max = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < lengths.size(); ++n) {
        if (n == 0 || lengths[n] + slack > running_max) out.push_back(n);
        running_max = std::max(running_max, lengths[n]);
    }
    return out;
}

inline std::vector<std::size_t> detect_special_indices(const std::vector<double>& lengths, double slack) {
    return detect_special_indices(std::span<const double>(lengths), slack);
}

}  // namespace isodyn::core
