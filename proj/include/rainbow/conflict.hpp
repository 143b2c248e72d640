#pragma once

#include "rainbow/graph.hpp"

namespace rainbow {

/// i -- i' iff some later vertex j > max(i, i') is adjacent to exactly one of
/// them. Two vertices may share a color in a generating sequence exactly when
/// they are not joined here, so G is an ordered k-rainbow threshold graph iff
/// this graph is k-colorable.
class ConflictGraph {
public:
    explicit ConflictGraph(Graph g) : graph_(std::move(g)) {}
    const Graph& graph() const noexcept { return graph_; }
    std::size_t order() const noexcept { return graph_.order(); }
    bool conflicting(Vertex i, Vertex j) const { return graph_.adjacent(i, j); }

private:
    Graph graph_;
};

inline ConflictGraph conflict_graph(const Graph& g) {
    const std::size_t n = g.order();
    const std::size_t words = g.words_per_row();
    Graph c(n);
    std::vector<std::uint64_t> later_mask(words);
    for (Vertex hi = 1; hi < n; ++hi) {
        // bits strictly above hi
        for (std::size_t w = 0; w < words; ++w) {
            const std::size_t base = w * bits::kWordBits;
            if (base + bits::kWordBits <= hi + 1) {
                later_mask[w] = 0;
            } else if (base > hi) {
                later_mask[w] = ~std::uint64_t{0};
            } else {
                later_mask[w] = ~std::uint64_t{0} << (hi + 1 - base);
            }
        }
        const auto row_hi = g.row(hi);
        for (Vertex lo = 0; lo < hi; ++lo) {
            const auto row_lo = g.row(lo);
            for (std::size_t w = 0; w < words; ++w) {
                if (((row_hi[w] ^ row_lo[w]) & later_mask[w]) != 0) {
                    c.set_edge(lo, hi, true);
                    break;
                }
            }
        }
    }
    return ConflictGraph(std::move(c));
}

}  // namespace rainbow
