#pragma once

// Ground sets, complete r-partite pieces and the counting primitives shared
// by every other header in the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gpd {

using Vertex = std::uint32_t;
using VertexSet = std::vector<Vertex>;
using BigInt = boost::multiprecision::cpp_int;

/// The complete r-uniform hypergraph on vertices 0..n-1.
struct GroundSet {
    std::size_t n = 0;
    std::size_t r = 0;

    GroundSet() = default;
    GroundSet(std::size_t n_, std::size_t r_) : n(n_), r(r_) {
        if (r < 1 || r > n)
            throw std::invalid_argument("ground set requires 1 <= r <= n (got n=" + std::to_string(n) +
                                        ", r=" + std::to_string(r) + ")");
    }

    friend bool operator==(const GroundSet&, const GroundSet&) = default;
};

/// A strictly increasing list of vertices.
using Edge = std::vector<Vertex>;

/// Exact binomial coefficient; zero when b > a.
inline BigInt binomial(std::size_t a, std::size_t b) {
    if (b > a) return 0;
    b = std::min(b, a - b);
    BigInt result = 1;
    for (std::size_t i = 1; i <= b; ++i) {
        result *= a - b + i;
        result /= i;
    }
    return result;
}

/// Machine-word binomial for indexing at desk scale. Throws on overflow.
inline std::uint64_t binomial_u64(std::size_t a, std::size_t b) {
    BigInt v = binomial(a, b);
    if (v > std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("binomial coefficient exceeds 64 bits");
    return v.convert_to<std::uint64_t>();
}

/// Complete r-partite r-graph: r pairwise disjoint nonempty parts, kept in
/// canonical order (parts sorted by minimum vertex, vertices ascending).
/// Only `canonicalize` builds one, so every instance satisfies the invariant.
class RPartiteGraph {
public:
    RPartiteGraph() = default;

    const std::vector<VertexSet>& parts() const noexcept { return parts_; }
    std::size_t arity() const noexcept { return parts_.size(); }

    /// Largest vertex in any part.
    Vertex max_vertex() const noexcept {
        Vertex m = 0;
        for (const auto& p : parts_) m = std::max(m, p.back());
        return m;
    }

    /// Product of the part sizes.
    BigInt edge_count() const {
        BigInt c = 1;
        for (const auto& p : parts_) c *= p.size();
        return c;
    }

    std::uint64_t edge_count_u64() const noexcept {
        std::uint64_t c = 1;
        for (const auto& p : parts_) c *= p.size();
        return c;
    }

    bool contains(Vertex v) const noexcept { return part_index_of(v) != npos; }

    /// Index of the part holding v, or npos.
    std::size_t part_index_of(Vertex v) const noexcept {
        for (std::size_t i = 0; i < parts_.size(); ++i)
            if (std::binary_search(parts_[i].begin(), parts_[i].end(), v)) return i;
        return npos;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    friend bool operator==(const RPartiteGraph&, const RPartiteGraph&) = default;
    friend auto operator<=>(const RPartiteGraph&, const RPartiteGraph&) = default;

private:
    explicit RPartiteGraph(std::vector<VertexSet> parts) : parts_(std::move(parts)) {}
    friend RPartiteGraph canonicalize(std::vector<VertexSet> parts, std::size_t n);

    std::vector<VertexSet> parts_;
};

inline constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

/// Builds the canonical form of an unordered family of vertex sets.
/// Rejects an empty family, empty parts, repeated or overlapping vertices and
/// vertices >= n.
inline RPartiteGraph canonicalize(std::vector<VertexSet> parts, std::size_t n = unbounded) {
    if (parts.empty()) throw std::invalid_argument("piece must have at least one part");
    std::size_t total = 0;
    for (auto& p : parts) {
        if (p.empty()) throw std::invalid_argument("piece has an empty part");
        std::sort(p.begin(), p.end());
        total += p.size();
    }
    VertexSet all;
    all.reserve(total);
    for (const auto& p : parts) {
        if (p.back() >= n)
            throw std::invalid_argument("vertex " + std::to_string(p.back()) + " out of range for n=" +
                                        std::to_string(n));
        all.insert(all.end(), p.begin(), p.end());
    }
    std::sort(all.begin(), all.end());
    if (auto it = std::adjacent_find(all.begin(), all.end()); it != all.end())
        throw std::invalid_argument("parts overlap at vertex " + std::to_string(*it));
    std::sort(parts.begin(), parts.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
    return RPartiteGraph(std::move(parts));
}

/// Visits every edge of a piece, sorted ascending, in lexicographic order.
/// The callback receives a reference to a reused buffer.
template <typename Fn>
void for_each_edge(const RPartiteGraph& piece, Fn&& fn) {
    const auto& parts = piece.parts();
    const std::size_t r = parts.size();
    // Lexicographic order over sorted edges: merge all vertices with their
    // part labels and pick, in increasing vertex order, one vertex per part.
    std::vector<std::pair<Vertex, std::size_t>> labelled;
    for (std::size_t i = 0; i < r; ++i)
        for (Vertex v : parts[i]) labelled.emplace_back(v, i);
    std::sort(labelled.begin(), labelled.end());

    Edge edge;
    edge.reserve(r);
    std::vector<char> used(r, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (edge.size() == r) {
            fn(static_cast<const Edge&>(edge));
            return;
        }
        for (std::size_t j = start; j < labelled.size(); ++j) {
            auto [v, part] = labelled[j];
            if (used[part]) continue;
            used[part] = 1;
            edge.push_back(v);
            rec(j + 1);
            edge.pop_back();
            used[part] = 0;
        }
    };
    rec(0);
}

inline std::vector<Edge> edges_of(const RPartiteGraph& piece) {
    std::vector<Edge> out;
    out.reserve(piece.edge_count_u64());
    for_each_edge(piece, [&](const Edge& e) { out.push_back(e); });
    return out;
}

/// A family of pieces over a common ground set. Carries no partition claim;
/// see verifier.hpp.
struct Decomposition {
    GroundSet ground;
    std::vector<RPartiteGraph> pieces;

    std::size_t size() const noexcept { return pieces.size(); }

    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Dense colexicographic ranking of the r-subsets of 0..n-1.
class EdgeIndexer {
public:
    EdgeIndexer(std::size_t n, std::size_t r) : n_(n), r_(r), table_(n + 1, std::vector<std::uint64_t>(r + 1, 0)) {
        for (std::size_t a = 0; a <= n; ++a)
            for (std::size_t b = 0; b <= r; ++b) table_[a][b] = binomial_u64(a, b);
        count_ = table_[n][r];
    }

    std::uint64_t count() const noexcept { return count_; }

    std::uint64_t rank(const Edge& e) const noexcept {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < e.size(); ++i) idx += table_[e[i]][i + 1];
        return idx;
    }

    Edge unrank(std::uint64_t idx) const {
        Edge e(r_);
        std::size_t v = n_;
        for (std::size_t i = r_; i-- > 0;) {
            do { --v; } while (table_[v][i + 1] > idx);
            e[i] = static_cast<Vertex>(v);
            idx -= table_[v][i + 1];
        }
        return e;
    }

private:
    std::size_t n_, r_;
    std::vector<std::vector<std::uint64_t>> table_;
    std::uint64_t count_ = 0;
};

/// Calls fn on every r-subset of 0..n-1 in lexicographic order. Stops early
/// when fn returns false.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t r, Fn&& fn) {
    if (r > n) return;
    Edge e(r);
    std::iota(e.begin(), e.end(), Vertex{0});
    while (true) {
        if (!fn(static_cast<const Edge&>(e))) return;
        std::size_t i = r;
        while (i > 0 && e[i - 1] == n - r + i - 1) --i;
        if (i == 0) return;
        ++e[i - 1];
        for (std::size_t j = i; j < r; ++j) e[j] = e[j - 1] + 1;
    }
}

inline VertexSet vertex_range(Vertex first, Vertex last) {
    VertexSet s(last - first);
    std::iota(s.begin(), s.end(), first);
    return s;
}

inline std::string to_string(const VertexSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    return out;
}

inline std::string to_string(const RPartiteGraph& piece) {
    std::string out;
    for (std::size_t i = 0; i < piece.parts().size(); ++i) {
        if (i) out += " | ";
        out += to_string(piece.parts()[i]);
    }
    return out;
}

}  // namespace gpd
