#pragma once

// Blocks: products E(B1) x E(B2) of two complete bipartite graphs, living on
// two vertex classes of equal size n with class-local labels 0..n-1.
// A BlockDecomposition partitions E(K_n) x E(K_n); g(n) is the least size.

#include <algorithm>
#include <array>
#include <iterator>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpd/core.hpp"

namespace gpd {

struct BipartiteGraph {
    VertexSet side_a;
    VertexSet side_b;

    std::size_t edge_count() const noexcept { return side_a.size() * side_b.size(); }

    friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;
};

struct Block {
    BipartiteGraph first;   // on class one
    BipartiteGraph second;  // on class two

    std::size_t pair_count() const noexcept { return first.edge_count() * second.edge_count(); }

    friend bool operator==(const Block&, const Block&) = default;
};

struct BlockDecomposition {
    std::size_t n = 0;
    std::vector<Block> blocks;

    std::size_t size() const noexcept { return blocks.size(); }

    friend bool operator==(const BlockDecomposition&, const BlockDecomposition&) = default;
};

/// Any function producing a block decomposition of E(K_n) x E(K_n).
using BlockProvider = std::function<BlockDecomposition(std::size_t n)>;

/// Stars ({i}, {i+1..n-1}) for i = 0..n-2; they partition E(K_n).
inline std::vector<BipartiteGraph> construct_star_bipartite(std::size_t n) {
    if (n < 2) throw std::invalid_argument("star bipartite decomposition needs n >= 2");
    std::vector<BipartiteGraph> stars;
    stars.reserve(n - 1);
    for (Vertex i = 0; i + 1 < n; ++i)
        stars.push_back({{i}, vertex_range(i + 1, static_cast<Vertex>(n))});
    return stars;
}

/// All (n-1)^2 ordered products of the star partition with itself.
inline BlockDecomposition construct_trivial_blocks(std::size_t n) {
    const auto stars = construct_star_bipartite(n);
    BlockDecomposition bd{n, {}};
    bd.blocks.reserve(stars.size() * stars.size());
    for (const auto& a : stars)
        for (const auto& b : stars) bd.blocks.push_back({a, b});
    return bd;
}

inline BlockDecomposition trivial_block_provider(std::size_t n) { return construct_trivial_blocks(n); }

/// Relabels a block into four host-vertex parts: side_a and side_b of the
/// first factor through embed_one, then those of the second through embed_two.
/// The 4-sets with one vertex per part are exactly the embedded edge pairs.
inline std::array<VertexSet, 4> block_to_four_parts(const Block& b, std::span<const Vertex> embed_one,
                                                    std::span<const Vertex> embed_two) {
    VertexSet image_one(embed_one.begin(), embed_one.end());
    VertexSet image_two(embed_two.begin(), embed_two.end());
    std::sort(image_one.begin(), image_one.end());
    std::sort(image_two.begin(), image_two.end());
    if (std::adjacent_find(image_one.begin(), image_one.end()) != image_one.end() ||
        std::adjacent_find(image_two.begin(), image_two.end()) != image_two.end())
        throw std::invalid_argument("block embedding is not injective");
    VertexSet common;
    std::set_intersection(image_one.begin(), image_one.end(), image_two.begin(), image_two.end(),
                          std::back_inserter(common));
    if (!common.empty()) throw std::invalid_argument("block embeddings have overlapping images");

    auto map = [](const VertexSet& side, std::span<const Vertex> embed) {
        VertexSet out;
        out.reserve(side.size());
        for (Vertex v : side) {
            if (v >= embed.size()) throw std::invalid_argument("block vertex outside embedded class");
            out.push_back(embed[v]);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    return {map(b.first.side_a, embed_one), map(b.first.side_b, embed_one), map(b.second.side_a, embed_two),
            map(b.second.side_b, embed_two)};
}

/// Outcome of verify_blocks. On failure `witness_first`/`witness_second` name
/// an edge pair covered `witness_multiplicity` times (0 or >= 2), or
/// `structural_error` describes a malformed block.
struct BlockReport {
    bool valid = false;
    std::size_t block_count = 0;
    std::uint64_t pair_count = 0;
    std::optional<std::string> structural_error;
    std::optional<Edge> witness_first;
    std::optional<Edge> witness_second;
    std::size_t witness_multiplicity = 0;
};

namespace detail {

inline std::optional<std::string> check_bipartite(const BipartiteGraph& g, std::size_t n) {
    if (g.side_a.empty() || g.side_b.empty()) return "bipartite graph has an empty side";
    VertexSet all = g.side_a;
    all.insert(all.end(), g.side_b.begin(), g.side_b.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) return "bipartite sides overlap or repeat";
    if (all.back() >= n) return "bipartite vertex out of range";
    return std::nullopt;
}

}  // namespace detail

/// Exhaustively checks that every ordered pair (e1, e2) of 2-sets is covered
/// by exactly one block.
inline BlockReport verify_blocks(const BlockDecomposition& bd) {
    BlockReport rep;
    rep.block_count = bd.blocks.size();
    if (bd.n < 2) {
        rep.structural_error = "class size must be at least 2";
        return rep;
    }
    EdgeIndexer pairs(bd.n, 2);
    const std::uint64_t m = pairs.count();
    rep.pair_count = m * m;

    for (std::size_t i = 0; i < bd.blocks.size(); ++i) {
        for (const auto* g : {&bd.blocks[i].first, &bd.blocks[i].second}) {
            if (auto err = detail::check_bipartite(*g, bd.n)) {
                rep.structural_error = "block " + std::to_string(i) + ": " + *err;
                return rep;
            }
        }
    }

    std::vector<std::uint32_t> mult(rep.pair_count, 0);
    auto edges_of_bipartite = [&](const BipartiteGraph& g) {
        std::vector<std::uint64_t> idx;
        for (Vertex a : g.side_a)
            for (Vertex b : g.side_b) idx.push_back(pairs.rank(a < b ? Edge{a, b} : Edge{b, a}));
        return idx;
    };
    for (const auto& blk : bd.blocks) {
        const auto e1 = edges_of_bipartite(blk.first);
        const auto e2 = edges_of_bipartite(blk.second);
        for (auto x : e1)
            for (auto y : e2) ++mult[x * m + y];
    }

    // Witness: first pair in lexicographic order of (e1, e2).
    rep.valid = true;
    for_each_subset(bd.n, 2, [&](const Edge& e1) {
        for_each_subset(bd.n, 2, [&](const Edge& e2) {
            auto c = mult[pairs.rank(e1) * m + pairs.rank(e2)];
            if (c != 1) {
                rep.valid = false;
                rep.witness_first = e1;
                rep.witness_second = e2;
                rep.witness_multiplicity = c;
                return false;
            }
            return true;
        });
        return rep.valid;
    });
    return rep;
}

}  // namespace gpd
