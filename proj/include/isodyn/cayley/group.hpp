#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace isodyn::cayley {

// Contract for a finitely generated group with a word metric: exact group
// operations on a hashable normal form, a symmetric generator list, and word
// length with an optional search budget (models with exact formulas ignore
// the budget). distance(a, b) = |a^{-1} b| is exposed separately so models
// can shortcut the generic invert-multiply-measure route.
template <typename G>
concept GroupModel = requires(const G& g, const typename G::Element& a, const typename G::Element& b,
                              std::int64_t budget) {
    typename G::Element;
    { g.identity() } -> std::same_as<typename G::Element>;
    { g.multiply(a, b) } -> std::same_as<typename G::Element>;
    { g.invert(a) } -> std::same_as<typename G::Element>;
    { g.generators() } -> std::convertible_to<const std::vector<typename G::Element>&>;
    { g.length(a, budget) } -> std::same_as<std::optional<std::int64_t>>;
    { g.distance(a, b, budget) } -> std::same_as<std::optional<std::int64_t>>;
};

// ---- free group on k letters: reduced words over {+1..k, -1..-k} ----

class FreeGroup {
  public:
    using Element = std::vector<std::int8_t>;

    explicit FreeGroup(int rank) : rank_(rank) {
        if (rank < 1 || rank > 100) throw std::invalid_argument("free group: bad rank");
        for (std::int8_t i = 1; i <= rank; ++i) {
            gens_.push_back({i});
            gens_.push_back({static_cast<std::int8_t>(-i)});
        }
    }

    int rank() const { return rank_; }
    Element identity() const { return {}; }
    const std::vector<Element>& generators() const { return gens_; }

    Element multiply(const Element& a, const Element& b) const {
        Element out = a;
        for (std::int8_t letter : b) {
            if (!out.empty() && out.back() == -letter)
                out.pop_back();
            else
                out.push_back(letter);
        }
        return out;
    }

    Element invert(const Element& a) const {
        Element out;
        out.reserve(a.size());
        for (auto it = a.rbegin(); it != a.rend(); ++it) out.push_back(static_cast<std::int8_t>(-*it));
        return out;
    }

    Element letter(int i) const {  // 1-based; negative for inverses
        if (i == 0 || std::abs(i) > rank_) throw std::invalid_argument("free group: bad letter");
        return {static_cast<std::int8_t>(i)};
    }

    std::optional<std::int64_t> length(const Element& a, std::int64_t = 0) const {
        return static_cast<std::int64_t>(a.size());
    }

    // |a^{-1} b| = |a| + |b| - 2 lcp(a, b) for reduced words
    std::optional<std::int64_t> distance(const Element& a, const Element& b, std::int64_t = 0) const {
        std::size_t i = 0;
        const std::size_t n = std::min(a.size(), b.size());
        while (i < n && a[i] == b[i]) ++i;
        return static_cast<std::int64_t>(a.size() + b.size() - 2 * i);
    }

  private:
    int rank_;
    std::vector<Element> gens_;
};

// ---- free abelian group Z^n with the standard generators (L1 metric) ----

class FreeAbelian {
  public:
    using Element = std::vector<std::int64_t>;

    explicit FreeAbelian(int dim) : dim_(dim) {
        if (dim < 1 || dim > 64) throw std::invalid_argument("free abelian: bad dimension");
        for (int i = 0; i < dim; ++i)
            for (int s : {+1, -1}) {
                Element e(dim, 0);
                e[i] = s;
                gens_.push_back(std::move(e));
            }
    }

    int dim() const { return dim_; }
    Element identity() const { return Element(dim_, 0); }
    const std::vector<Element>& generators() const { return gens_; }

    Element multiply(const Element& a, const Element& b) const {
        Element out(dim_);
        for (int i = 0; i < dim_; ++i) out[i] = a[i] + b[i];
        return out;
    }

    Element invert(const Element& a) const {
        Element out(dim_);
        for (int i = 0; i < dim_; ++i) out[i] = -a[i];
        return out;
    }

    Element vector(std::vector<std::int64_t> v) const {
        if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("free abelian: bad vector");
        return v;
    }

    std::optional<std::int64_t> length(const Element& a, std::int64_t = 0) const {
        std::int64_t s = 0;
        for (auto x : a) s += std::abs(x);
        return s;
    }

    std::optional<std::int64_t> distance(const Element& a, const Element& b, std::int64_t = 0) const {
        std::int64_t s = 0;
        for (int i = 0; i < dim_; ++i) s += std::abs(b[i] - a[i]);
        return s;
    }

  private:
    int dim_;
    std::vector<Element> gens_;
};

// ---- groups of small integer matrices under multiplication ----

struct IntMatrix {
    int n = 0;
    std::array<std::int64_t, 16> v{};  // row-major, n x n with n <= 4

    bool operator==(const IntMatrix& o) const { return n == o.n && v == o.v; }
    std::int64_t& at(int r, int c) { return v[static_cast<std::size_t>(r * n + c)]; }
    std::int64_t at(int r, int c) const { return v[static_cast<std::size_t>(r * n + c)]; }

    static IntMatrix eye(int n) {
        IntMatrix m;
        m.n = n;
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
};

struct IntMatrixHash {
    std::size_t operator()(const IntMatrix& m) const {
        std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(m.n);
        for (int i = 0; i < m.n * m.n; ++i) {
            h ^= static_cast<std::uint64_t>(m.v[static_cast<std::size_t>(i)]);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

inline IntMatrix submatrix(const IntMatrix& m, int row, int col) {
    IntMatrix sub;
    sub.n = m.n - 1;
    int r2 = 0;
    for (int r = 0; r < m.n; ++r) {
        if (r == row) continue;
        int c2 = 0;
        for (int c = 0; c < m.n; ++c) {
            if (c == col) continue;
            sub.at(r2, c2++) = m.at(r, c);
        }
        ++r2;
    }
    return sub;
}

inline std::int64_t int_determinant(const IntMatrix& m) {
    if (m.n == 1) return m.at(0, 0);
    if (m.n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    std::int64_t det = 0;
    for (int c = 0; c < m.n; ++c)
        det += (c % 2 == 0 ? 1 : -1) * m.at(0, c) * int_determinant(submatrix(m, 0, c));
    return det;
}

// Word length is breadth-first search over generator multiplications from the
// identity, with a cache grown layer by layer. The cache is guarded so
// concurrent queries see the same values as sequential ones.
class MatrixGroup {
  public:
    using Element = IntMatrix;

    explicit MatrixGroup(std::vector<IntMatrix> generators) {
        if (generators.empty()) throw std::invalid_argument("matrix group: no generators");
        n_ = generators.front().n;
        for (const auto& g : generators) {
            if (g.n != n_) throw std::invalid_argument("matrix group: mixed sizes");
            gens_.push_back(g);
        }
        // close the generating set under inversion (requires det = +-1)
        for (const auto& g : generators) {
            const IntMatrix inv = invert(g);
            bool present = false;
            for (const auto& h : gens_)
                if (h == inv) present = true;
            if (!present) gens_.push_back(inv);
        }
        cache_[eyes()] = 0;
        frontier_.push_back(eyes());
    }

    IntMatrix eyes() const { return IntMatrix::eye(n_); }
    Element identity() const { return eyes(); }
    const std::vector<Element>& generators() const { return gens_; }

    Element multiply(const Element& a, const Element& b) const {
        if (a.n != n_ || b.n != n_) throw std::invalid_argument("matrix group: wrong size");
        IntMatrix out;
        out.n = n_;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                std::int64_t s = 0;
                for (int k = 0; k < n_; ++k) s += a.at(i, k) * b.at(k, j);
                out.at(i, j) = s;
            }
        return out;
    }

    Element invert(const Element& a) const {
        const std::int64_t det = int_determinant(a);
        if (det != 1 && det != -1)
            throw std::invalid_argument("matrix group: element not invertible over the integers");
        IntMatrix adj;
        adj.n = n_;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const std::int64_t sign = ((i + j) % 2 == 0) ? 1 : -1;
                const std::int64_t c = n_ == 1 ? 1 : sign * int_determinant(submatrix(a, j, i));
                adj.at(i, j) = det == 1 ? c : -c;
            }
        return adj;
    }

    std::optional<std::int64_t> length(const Element& a, std::int64_t budget) const {
        std::scoped_lock lock(mutex_);
        auto it = cache_.find(a);
        while (it == cache_.end() && layer_ < budget) {
            grow_layer();
            it = cache_.find(a);
        }
        if (it != cache_.end() && it->second <= budget) return it->second;
        return std::nullopt;
    }

    std::optional<std::int64_t> distance(const Element& a, const Element& b, std::int64_t budget) const {
        return length(multiply(invert(a), b), budget);
    }

  private:
    void grow_layer() const {  // caller holds the lock
        std::vector<IntMatrix> next;
        for (const auto& m : frontier_)
            for (const auto& g : gens_) {
                IntMatrix prod = multiply(m, g);
                if (cache_.emplace(prod, layer_ + 1).second) next.push_back(std::move(prod));
            }
        frontier_ = std::move(next);
        ++layer_;
    }

    int n_ = 0;
    std::vector<Element> gens_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<IntMatrix, std::int64_t, IntMatrixHash> cache_;
    mutable std::vector<IntMatrix> frontier_;
    mutable std::int64_t layer_ = 0;
};

static_assert(GroupModel<FreeGroup>);
static_assert(GroupModel<FreeAbelian>);
static_assert(GroupModel<MatrixGroup>);

}  // namespace isodyn::cayley
