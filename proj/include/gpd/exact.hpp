#pragma once

// Exact f_r(n) on tiny instances: branch-and-bound exact cover of the
// r-subsets by complete r-partite candidate pieces.

#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gpd/constructions.hpp"
#include "gpd/core.hpp"

namespace gpd {

inline constexpr std::size_t candidate_soft_cap = 9;

/// All canonical families of r pairwise disjoint nonempty subsets of
/// 0..n-1, each exactly once. Parts are labelled by first appearance, so
/// the emitted order follows a restricted-growth assignment of vertices.
inline std::vector<RPartiteGraph> enumerate_candidate_pieces(std::size_t n, std::size_t r,
                                                            bool allow_large = false) {
    GroundSet g(n, r);
    if (n > candidate_soft_cap && !allow_large)
        throw std::invalid_argument("candidate enumeration capped at n <= 9 without override");
    std::vector<RPartiteGraph> out;
    std::vector<VertexSet> parts;
    std::function<void(Vertex)> rec = [&](Vertex v) {
        // Not enough vertices left to open the remaining parts.
        if (parts.size() + (n - v) < r) return;
        if (v == n) {
            out.push_back(canonicalize(parts, n));
            return;
        }
        rec(v + 1);  // unused
        for (auto& p : parts) {
            p.push_back(v);
            rec(v + 1);
            p.pop_back();
        }
        if (parts.size() < r) {
            parts.push_back({v});
            rec(v + 1);
            parts.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

struct SearchBudget {
    std::uint64_t max_nodes = 50'000'000;
    std::optional<double> max_seconds;

    SearchBudget() = default;
    explicit SearchBudget(std::uint64_t nodes, std::optional<double> seconds = std::nullopt)
        : max_nodes(nodes), max_seconds(seconds) {
        if (max_nodes == 0) throw std::invalid_argument("node budget must be positive");
        if (max_seconds && !(*max_seconds > 0)) throw std::invalid_argument("time budget must be positive");
    }
};

enum class SearchStatus { Optimal, BudgetExhausted };

/// Result of solve_exact. When Optimal, lower_bound == upper_bound == f_r(n)
/// and `witness` attains it. When the budget runs out, the interval is what
/// the partial search established and `witness` holds the best
/// decomposition found, if any.
struct ExactResult {
    SearchStatus status = SearchStatus::BudgetExhausted;
    std::size_t lower_bound = 0;
    std::size_t upper_bound = 0;
    std::optional<Decomposition> witness;
    std::uint64_t nodes = 0;

    std::optional<std::size_t> value() const {
        if (status == SearchStatus::Optimal) return upper_bound;
        return std::nullopt;
    }
};

namespace detail {

class ExactCoverSearch {
public:
    ExactCoverSearch(std::size_t n, std::size_t r, const SearchBudget& budget)
        : ground_(n, r), budget_(budget) {
        // Edges indexed in lexicographic order so "first uncovered" is the
        // lexicographically smallest one.
        for_each_subset(n, r, [&](const Edge& e) {
            edges_.push_back(e);
            return true;
        });
        EdgeIndexer colex(n, r);
        std::vector<std::size_t> colex_to_lex(colex.count());
        for (std::size_t i = 0; i < edges_.size(); ++i) colex_to_lex[colex.rank(edges_[i])] = i;

        words_ = (edges_.size() + 63) / 64;
        candidates_ = enumerate_candidate_pieces(n, r, true);
        masks_.assign(candidates_.size() * words_, 0);
        covering_.resize(edges_.size());
        for (std::size_t c = 0; c < candidates_.size(); ++c) {
            std::size_t size = 0;
            for_each_edge(candidates_[c], [&](const Edge& e) {
                const auto i = colex_to_lex[colex.rank(e)];
                masks_[c * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
                covering_[i].push_back(c);
                ++size;
            });
            max_size_ = std::max(max_size_, size);
        }
    }

    ExactResult run() {
        ExactResult res;
        const std::size_t total = edges_.size();
        res.lower_bound = (total + max_size_ - 1) / max_size_;
        // Any valid construction is an upper bound; search for strictly fewer
        // pieces than one more than the baseline so the search finds its own witness.
        best_ = baseline_count(ground_.n, ground_.r).convert_to<std::size_t>() + 1;
        start_ = std::chrono::steady_clock::now();

        std::vector<std::uint64_t> covered(words_, 0);
        std::vector<std::size_t> chosen;
        const bool complete = dfs(covered, total, chosen);
        res.nodes = nodes_;

        if (best_witness_) {
            Decomposition w{ground_, {}};
            for (auto c : *best_witness_) w.pieces.push_back(candidates_[c]);
            res.witness = std::move(w);
            res.upper_bound = best_witness_->size();
        } else {
            res.witness = construct_baseline(ground_.n, ground_.r);
            res.upper_bound = best_ - 1;
        }
        if (complete) {
            res.status = SearchStatus::Optimal;
            res.lower_bound = res.upper_bound;
        }
        return res;
    }

private:
    bool out_of_budget() {
        if (nodes_ >= budget_.max_nodes) return true;
        if (budget_.max_seconds && (nodes_ & 0x3ff) == 0) {
            std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
            if (el.count() > *budget_.max_seconds) timed_out_ = true;
        }
        return timed_out_;
    }

    // Returns false when the budget ran out before the subtree was exhausted.
    bool dfs(std::vector<std::uint64_t>& covered, std::size_t uncovered, std::vector<std::size_t>& chosen) {
        if (out_of_budget()) return false;
        ++nodes_;
        if (uncovered == 0) {
            if (chosen.size() < best_) {
                best_ = chosen.size();
                best_witness_ = chosen;
            }
            return true;
        }
        if (chosen.size() + (uncovered + max_size_ - 1) / max_size_ >= best_) return true;

        std::size_t target = 0;
        for (std::size_t w = 0; w < words_; ++w) {
            const std::uint64_t free = ~covered[w];
            if (free) {
                target = w * 64 + static_cast<std::size_t>(std::countr_zero(free));
                break;
            }
        }
        for (auto c : covering_[target]) {
            const std::uint64_t* m = &masks_[c * words_];
            bool disjoint = true;
            std::size_t gain = 0;
            for (std::size_t w = 0; w < words_; ++w) {
                if (covered[w] & m[w]) {
                    disjoint = false;
                    break;
                }
                gain += static_cast<std::size_t>(std::popcount(m[w]));
            }
            if (!disjoint) continue;
            for (std::size_t w = 0; w < words_; ++w) covered[w] |= m[w];
            chosen.push_back(c);
            const bool ok = dfs(covered, uncovered - gain, chosen);
            chosen.pop_back();
            for (std::size_t w = 0; w < words_; ++w) covered[w] &= ~m[w];
            if (!ok) return false;
            if (chosen.size() + 1 >= best_) break;
        }
        return true;
    }

    GroundSet ground_;
    SearchBudget budget_;
    std::vector<Edge> edges_;
    std::vector<RPartiteGraph> candidates_;
    std::vector<std::uint64_t> masks_;
    std::vector<std::vector<std::size_t>> covering_;
    std::size_t words_ = 0;
    std::size_t max_size_ = 1;
    std::size_t best_ = 0;
    std::optional<std::vector<std::size_t>> best_witness_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// Exact minimum number of complete r-partite pieces partitioning
/// K_n^(r). Branches on the lexicographically smallest uncovered edge over
/// the candidates covering it, pruning when
/// used + ceil(uncovered / largest candidate) reaches the best count found.
inline ExactResult solve_exact(std::size_t n, std::size_t r, const SearchBudget& budget = SearchBudget{}) {
    GroundSet g(n, r);
    return detail::ExactCoverSearch(n, r, budget).run();
}

}  // namespace gpd
