#pragma once

// Exhaustive validation that a decomposition partitions all r-subsets.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpd/core.hpp"

namespace gpd {

/// Largest edge space the verifier will materialise.
inline constexpr std::uint64_t max_verified_edges = std::uint64_t{1} << 28;

struct CoverageWitness {
    Edge edge;
    std::size_t multiplicity = 0;
    std::vector<std::size_t> covering_pieces;
};

struct VerificationReport {
    bool valid = false;
    std::size_t piece_count = 0;
    BigInt edge_count = 0;     // binomial(n, r)
    BigInt census = 0;         // sum over pieces of the product of part sizes
    bool census_matches = false;
    std::optional<std::string> structural_error;
    std::optional<std::size_t> structural_piece;
    std::optional<CoverageWitness> witness;
};

namespace detail {

inline std::optional<std::string> structural_problem(const RPartiteGraph& piece, const GroundSet& g) {
    if (piece.arity() != g.r)
        return "piece has " + std::to_string(piece.arity()) + " parts, expected " + std::to_string(g.r);
    if (piece.max_vertex() >= g.n) return "vertex " + std::to_string(piece.max_vertex()) + " out of range";
    return std::nullopt;
}

inline std::vector<std::uint32_t> multiplicities(const Decomposition& d, const EdgeIndexer& idx) {
    std::vector<std::uint32_t> mult(idx.count(), 0);
    for (const auto& piece : d.pieces)
        for_each_edge(piece, [&](const Edge& e) { ++mult[idx.rank(e)]; });
    return mult;
}

inline void require_tractable(const GroundSet& g) {
    if (binomial(g.n, g.r) > max_verified_edges)
        throw std::length_error("edge space too large for exhaustive verification");
}

}  // namespace detail

/// Checks structure, the size census and exact single coverage of every
/// r-subset. The census alone never establishes validity. On a coverage
/// failure the witness is the lexicographically first edge whose
/// multiplicity differs from 1.
inline VerificationReport verify_decomposition(const Decomposition& d) {
    VerificationReport rep;
    const GroundSet& g = d.ground;
    rep.piece_count = d.pieces.size();
    rep.edge_count = binomial(g.n, g.r);

    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        if (auto err = detail::structural_problem(d.pieces[i], g)) {
            rep.structural_error = *err;
            rep.structural_piece = i;
            return rep;
        }
        rep.census += d.pieces[i].edge_count();
    }
    rep.census_matches = rep.census == rep.edge_count;
    if (rep.edge_count > max_verified_edges) {
        rep.structural_error = "edge space too large for exhaustive verification";
        return rep;
    }

    EdgeIndexer idx(g.n, g.r);
    const auto mult = detail::multiplicities(d, idx);

    std::optional<Edge> bad;
    for_each_subset(g.n, g.r, [&](const Edge& e) {
        if (mult[idx.rank(e)] != 1) {
            bad = e;
            return false;
        }
        return true;
    });
    if (!bad) {
        rep.valid = rep.census_matches;
        return rep;
    }

    CoverageWitness w{*bad, mult[idx.rank(*bad)], {}};
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        const auto& piece = d.pieces[i];
        bool covers = true;
        std::vector<char> hit(piece.arity(), 0);
        for (Vertex v : w.edge) {
            auto p = piece.part_index_of(v);
            if (p == RPartiteGraph::npos || hit[p]) {
                covers = false;
                break;
            }
            hit[p] = 1;
        }
        if (covers) w.covering_pieces.push_back(i);
    }
    rep.witness = std::move(w);
    return rep;
}

/// Number of edges covered exactly m times, for every m that occurs.
/// Throws std::invalid_argument on a structurally invalid piece.
inline std::map<std::size_t, std::uint64_t> coverage_histogram(const Decomposition& d) {
    for (const auto& piece : d.pieces)
        if (auto err = detail::structural_problem(piece, d.ground)) throw std::invalid_argument(*err);
    detail::require_tractable(d.ground);
    EdgeIndexer idx(d.ground.n, d.ground.r);
    std::map<std::size_t, std::uint64_t> hist;
    for (auto c : detail::multiplicities(d, idx)) ++hist[c];
    return hist;
}

}  // namespace gpd
