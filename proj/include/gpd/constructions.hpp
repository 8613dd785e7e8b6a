#pragma once

// Decomposition-producing algorithms: the even-position baseline, the
// k-class splitting construction for odd r, and the reduction that derives
// an even-uniformity decomposition from an odd one.

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpd/blocks.hpp"
#include "gpd/core.hpp"
#include "gpd/verifier.hpp"

namespace gpd {

/// Any function producing a decomposition of K_n^(r) on vertices 0..n-1.
using SubProvider = std::function<Decomposition(std::size_t n, std::size_t r)>;

/// Number of pieces of construct_baseline(n, r): binomial(n - ceil(r/2), floor(r/2)).
inline BigInt baseline_count(std::size_t n, std::size_t r) {
    const std::size_t fixed = r / 2;
    const std::size_t up = (r + 1) / 2;
    if (up > n) return 0;
    return binomial(n - up, fixed);
}

/// For each sorted r-set x_1 < ... < x_r the vertices in even positions
/// x_2, x_4, ... are fixed; the others range over the open gaps between the
/// fixed vertices (and, for odd r, above the last one). One piece per
/// admissible choice of fixed vertices.
inline Decomposition construct_baseline(std::size_t n, std::size_t r) {
    Decomposition d{GroundSet(n, r), {}};
    const std::size_t fixed = r / 2;
    const bool odd = r % 2 == 1;
    const Vertex top = static_cast<Vertex>(n);

    std::vector<Vertex> a;
    a.reserve(fixed);
    std::function<void()> rec = [&]() {
        if (a.size() == fixed) {
            std::vector<VertexSet> parts;
            Vertex lo = 0;
            for (Vertex f : a) {
                parts.push_back(vertex_range(lo, f));
                parts.push_back({f});
                lo = f + 1;
            }
            if (odd) parts.push_back(vertex_range(lo, top));
            d.pieces.push_back(canonicalize(std::move(parts), n));
            return;
        }
        const std::size_t left = fixed - a.size() - 1;  // fixed vertices still to place after this one
        const Vertex first = a.empty() ? 1 : a.back() + 2;
        // Each later fixed vertex needs a gap of 2; odd r also needs room above the last.
        const std::size_t reserve = 2 * left + (odd ? 1 : 0);
        if (n < reserve + 1) return;
        const Vertex last = static_cast<Vertex>(n - 1 - reserve);
        for (Vertex f = first; f <= last; ++f) {
            a.push_back(f);
            rec();
            a.pop_back();
        }
    };
    rec();
    return d;
}

inline Decomposition construct_stars(std::size_t n) {
    if (n < 2) throw std::invalid_argument("stars need n >= 2");
    return construct_baseline(n, 2);
}

inline Decomposition baseline_provider(std::size_t n, std::size_t r) { return construct_baseline(n, r); }

/// k classes of n vertices; class i is [i*n, (i+1)*n).
struct ClassLayout {
    std::size_t k = 0;
    std::size_t n = 0;

    std::size_t ground_size() const noexcept { return k * n; }

    VertexSet class_vertices(std::size_t i) const {
        return vertex_range(static_cast<Vertex>(i * n), static_cast<Vertex>((i + 1) * n));
    }
};

/// Intersection sizes of an edge with the classes; absent classes get 0.
struct Signature {
    std::vector<std::pair<std::size_t, std::size_t>> assignments;  // (class, size), ascending class

    std::size_t size_of(std::size_t cls) const noexcept {
        for (auto [c, s] : assignments)
            if (c == cls) return s;
        return 0;
    }

    std::size_t total() const noexcept {
        std::size_t t = 0;
        for (auto [c, s] : assignments) t += s;
        return t;
    }

    std::vector<std::size_t> size_vector(std::size_t k) const {
        std::vector<std::size_t> v(k, 0);
        for (auto [c, s] : assignments) v.at(c) = s;
        return v;
    }

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Every assignment of sizes 0..n to the k classes summing to r, in
/// lexicographic order of the size vector.
inline std::vector<Signature> enumerate_signatures(const ClassLayout& layout, std::size_t r) {
    std::vector<Signature> out;
    if (r > layout.ground_size()) return out;
    std::vector<std::size_t> sizes(layout.k, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t cls, std::size_t remaining) {
        if (cls == layout.k) {
            if (remaining != 0) return;
            Signature s;
            for (std::size_t i = 0; i < layout.k; ++i)
                if (sizes[i]) s.assignments.emplace_back(i, sizes[i]);
            out.push_back(std::move(s));
            return;
        }
        const std::size_t capacity_after = (layout.k - cls - 1) * layout.n;
        for (std::size_t s = 0; s <= std::min(layout.n, remaining); ++s) {
            if (remaining - s > capacity_after) continue;
            sizes[cls] = s;
            rec(cls + 1, remaining - s);
        }
        sizes[cls] = 0;
    };
    rec(0, r);
    return out;
}

/// Shape of a signature for r = 2d+1.
enum class SignatureFamily {
    TwosAndSingle,  // d classes of size 2 plus one class of size 1
    TwosAndTriple,  // d-1 classes of size 2 plus one class of size 3
    Generic,
};

inline SignatureFamily classify(const Signature& sig, std::size_t r) {
    const std::size_t d = r / 2;
    std::size_t twos = 0, ones = 0, threes = 0;
    for (auto [c, s] : sig.assignments) {
        twos += s == 2;
        ones += s == 1;
        threes += s == 3;
    }
    const std::size_t l = sig.assignments.size();
    if (r % 2 == 1) {
        if (l == d + 1 && twos == d && ones == 1) return SignatureFamily::TwosAndSingle;
        if (l == d && twos + 1 == d && threes == 1) return SignatureFamily::TwosAndTriple;
    }
    return SignatureFamily::Generic;
}

namespace detail {

// One product factor: alternatives, each a list of host-vertex parts.
using Factor = std::vector<std::vector<VertexSet>>;

inline std::vector<RPartiteGraph> product(const std::vector<Factor>& factors, std::size_t n_total) {
    std::vector<RPartiteGraph> out;
    for (const auto& f : factors)
        if (f.empty()) return out;
    std::vector<VertexSet> parts;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == factors.size()) {
            out.push_back(canonicalize(parts, n_total));
            return;
        }
        for (const auto& alt : factors[i]) {
            const std::size_t mark = parts.size();
            parts.insert(parts.end(), alt.begin(), alt.end());
            rec(i + 1);
            parts.resize(mark);
        }
    };
    rec(0);
    return out;
}

inline Factor sub_factor(const Decomposition& sub, const ClassLayout& layout, std::size_t cls) {
    const Vertex offset = static_cast<Vertex>(cls * layout.n);
    Factor f;
    f.reserve(sub.pieces.size());
    for (const auto& piece : sub.pieces) {
        std::vector<VertexSet> parts;
        for (VertexSet p : piece.parts()) {
            for (auto& v : p) v += offset;
            parts.push_back(std::move(p));
        }
        f.push_back(std::move(parts));
    }
    return f;
}

inline Factor block_factor(const BlockDecomposition& bd, const ClassLayout& layout, std::size_t cls_one,
                           std::size_t cls_two) {
    const VertexSet one = layout.class_vertices(cls_one);
    const VertexSet two = layout.class_vertices(cls_two);
    Factor f;
    f.reserve(bd.blocks.size());
    for (const auto& b : bd.blocks) {
        auto four = block_to_four_parts(b, one, two);
        f.push_back({four.begin(), four.end()});
    }
    return f;
}

inline Decomposition checked_sub(const SubProvider& sub, std::size_t n, std::size_t r) {
    Decomposition d = sub(n, r);
    if (d.ground != GroundSet(n, r))
        throw std::invalid_argument("sub-provider returned a decomposition of the wrong ground set");
    return d;
}

inline BlockDecomposition checked_blocks(const BlockProvider& blocks, std::size_t n) {
    BlockDecomposition bd = blocks(n);
    if (bd.n != n) throw std::invalid_argument("block provider returned blocks for the wrong class size");
    return bd;
}

// Pairs the given 2-classes (ascending) into block factors; a leftover class
// (the highest index) gets the sub-provider's 2-uniform decomposition.
inline void pair_two_classes(std::vector<std::size_t> twos, const ClassLayout& layout, const SubProvider& sub,
                             const BlockProvider& blocks, std::vector<Factor>& factors) {
    std::sort(twos.begin(), twos.end());
    std::optional<BlockDecomposition> bd;
    std::size_t i = 0;
    for (; i + 1 < twos.size(); i += 2) {
        if (!bd) bd = checked_blocks(blocks, layout.n);
        factors.push_back(block_factor(*bd, layout, twos[i], twos[i + 1]));
    }
    if (i < twos.size()) factors.push_back(sub_factor(checked_sub(sub, layout.n, 2), layout, twos[i]));
}

inline void validate_signature(const ClassLayout& layout, const Signature& sig) {
    std::size_t prev = 0;
    bool first = true;
    for (auto [c, s] : sig.assignments) {
        if (c >= layout.k) throw std::invalid_argument("signature names a class outside the layout");
        if (!first && c <= prev) throw std::invalid_argument("signature classes must be strictly ascending");
        if (s < 1 || s > layout.n) throw std::invalid_argument("signature size outside 1..n");
        prev = c;
        first = false;
    }
}

}  // namespace detail

/// Pieces covering every edge that meets each class in `twos` in exactly 2
/// vertices and has its last vertex anywhere else. The classes are paired
/// into blocks, an unpaired class is covered by the 2-uniform sub-provider
/// and one final part is the complement of the chosen classes. Empty when
/// the complement is empty.
inline std::vector<RPartiteGraph> decompose_twos_and_single(const ClassLayout& layout, std::vector<std::size_t> twos,
                                                            const SubProvider& sub, const BlockProvider& blocks) {
    std::sort(twos.begin(), twos.end());
    VertexSet complement;
    for (std::size_t c = 0; c < layout.k; ++c)
        if (!std::binary_search(twos.begin(), twos.end(), c)) {
            auto cv = layout.class_vertices(c);
            complement.insert(complement.end(), cv.begin(), cv.end());
        }
    if (complement.empty()) return {};
    std::vector<detail::Factor> factors;
    detail::pair_two_classes(twos, layout, sub, blocks, factors);
    factors.push_back({{complement}});
    return detail::product(factors, layout.ground_size());
}

/// Pieces partitioning the edges with the given signature. For the
/// TwosAndSingle shape the result covers the whole family sharing the same
/// 2-classes (see decompose_twos_and_single), so callers must request it
/// once per choice of 2-classes.
inline std::vector<RPartiteGraph> decompose_signature(const ClassLayout& layout, const Signature& sig,
                                                      std::size_t r, const SubProvider& sub,
                                                      const BlockProvider& blocks) {
    detail::validate_signature(layout, sig);
    if (sig.total() != r) throw std::invalid_argument("signature sizes do not sum to r");

    std::vector<std::size_t> twos;
    for (auto [c, s] : sig.assignments)
        if (s == 2) twos.push_back(c);

    switch (classify(sig, r)) {
        case SignatureFamily::TwosAndSingle:
            return decompose_twos_and_single(layout, twos, sub, blocks);
        case SignatureFamily::TwosAndTriple: {
            std::vector<detail::Factor> factors;
            detail::pair_two_classes(twos, layout, sub, blocks, factors);
            for (auto [c, s] : sig.assignments)
                if (s == 3) factors.push_back(detail::sub_factor(detail::checked_sub(sub, layout.n, 3), layout, c));
            return detail::product(factors, layout.ground_size());
        }
        case SignatureFamily::Generic:
            break;
    }
    std::vector<detail::Factor> factors;
    for (auto [c, s] : sig.assignments)
        factors.push_back(detail::sub_factor(detail::checked_sub(sub, layout.n, s), layout, c));
    return detail::product(factors, layout.ground_size());
}

/// Piece counts per signature family.
struct FamilyTally {
    BigInt twos_and_single = 0;
    BigInt twos_and_triple = 0;
    BigInt generic = 0;

    BigInt total() const { return twos_and_single + twos_and_triple + generic; }

    friend bool operator==(const FamilyTally&, const FamilyTally&) = default;
};

struct Theorem1Result {
    Decomposition decomposition;
    FamilyTally tally;
};

/// Decomposes K_{kn}^(r), r = 2d+1, by splitting the vertices into k classes
/// of size n and covering the edges of each intersection signature.
/// Sub-problems inside a class come from `sub`; pairs of 2-classes use
/// `blocks`. Pieces are emitted in signature order.
inline Theorem1Result construct_theorem1(std::size_t n, std::size_t k, std::size_t r,
                                         const SubProvider& sub = baseline_provider,
                                         const BlockProvider& blocks = trivial_block_provider) {
    if (r % 2 == 0 || r < 3) throw std::invalid_argument("construct_theorem1 needs odd r >= 3");
    if (n < 2) throw std::invalid_argument("construct_theorem1 needs class size n >= 2");
    if (k < 1 || r > k * n) throw std::invalid_argument("construct_theorem1 needs r <= k*n");

    const ClassLayout layout{k, n};
    // Providers are deterministic; memoise them for the whole construction.
    std::map<std::size_t, Decomposition> sub_cache;
    SubProvider cached_sub = [&](std::size_t nn, std::size_t rr) -> Decomposition {
        auto it = sub_cache.find(rr);
        if (it == sub_cache.end()) it = sub_cache.emplace(rr, detail::checked_sub(sub, nn, rr)).first;
        return it->second;
    };
    std::optional<BlockDecomposition> block_cache;
    BlockProvider cached_blocks = [&](std::size_t nn) -> BlockDecomposition {
        if (!block_cache) block_cache = detail::checked_blocks(blocks, nn);
        return *block_cache;
    };

    Theorem1Result res{Decomposition{GroundSet(k * n, r), {}}, {}};
    std::set<std::vector<std::size_t>> seen_twos;
    for (const auto& sig : enumerate_signatures(layout, r)) {
        const auto family = classify(sig, r);
        if (family == SignatureFamily::TwosAndSingle) {
            std::vector<std::size_t> twos;
            for (auto [c, s] : sig.assignments)
                if (s == 2) twos.push_back(c);
            if (!seen_twos.insert(twos).second) continue;
        }
        auto pieces = decompose_signature(layout, sig, r, cached_sub, cached_blocks);
        switch (family) {
            case SignatureFamily::TwosAndSingle: res.tally.twos_and_single += pieces.size(); break;
            case SignatureFamily::TwosAndTriple: res.tally.twos_and_triple += pieces.size(); break;
            case SignatureFamily::Generic: res.tally.generic += pieces.size(); break;
        }
        auto& out = res.decomposition.pieces;
        out.insert(out.end(), std::make_move_iterator(pieces.begin()), std::make_move_iterator(pieces.end()));
    }
    return res;
}

/// Decomposition of K_n^(r), r even, obtained from an odd-uniformity
/// decomposition of K_{n+1}^(r+1) by restricting to edges through vertex n:
/// each piece with a part containing n yields its other r parts.
inline Decomposition construct_even_from_odd(std::size_t n, std::size_t r,
                                             const SubProvider& odd_provider = baseline_provider) {
    if (r % 2 != 0 || r < 2) throw std::invalid_argument("construct_even_from_odd needs even r >= 2");
    if (n < r) throw std::invalid_argument("construct_even_from_odd needs n >= r");
    const Decomposition odd = odd_provider(n + 1, r + 1);
    if (odd.ground != GroundSet(n + 1, r + 1))
        throw std::invalid_argument("odd provider returned a decomposition of the wrong ground set");
    const auto rep = verify_decomposition(odd);
    if (!rep.valid) throw std::invalid_argument("odd provider returned an invalid decomposition");

    const Vertex excluded = static_cast<Vertex>(n);
    Decomposition out{GroundSet(n, r), {}};
    for (const auto& piece : odd.pieces) {
        const auto hit = piece.part_index_of(excluded);
        if (hit == RPartiteGraph::npos) continue;
        std::vector<VertexSet> parts;
        for (std::size_t j = 0; j < piece.arity(); ++j)
            if (j != hit) parts.push_back(piece.parts()[j]);
        out.pieces.push_back(canonicalize(std::move(parts), n));
    }
    return out;
}

}  // namespace gpd
