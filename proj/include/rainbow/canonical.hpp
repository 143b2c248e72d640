#pragma once

// Canonical labeling by colour refinement plus individualization, taking the
// least RTG bit payload over all leaves of the search tree.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "rainbow/errors.hpp"
#include "rainbow/graph.hpp"

namespace rainbow {

namespace detail {

using Cells = std::vector<std::vector<Vertex>>;

/// Splits cells by neighbour counts into every cell until stable. The cell
/// order stays a function of the graph and the individualized vertices only.
inline void refine(const Graph& g, Cells& cells) {
    const std::size_t n = g.order();
    std::vector<std::size_t> cell_of(n);
    while (true) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (Vertex v : cells[c]) cell_of[v] = c;
        Cells next;
        next.reserve(n);
        for (const auto& cell : cells) {
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            std::map<std::vector<std::size_t>, std::vector<Vertex>> groups;
            for (Vertex v : cell) {
                std::vector<std::size_t> sig(cells.size(), 0);
                for (Vertex u = 0; u < n; ++u)
                    if (u != v && g.adjacent(u, v)) ++sig[cell_of[u]];
                groups[std::move(sig)].push_back(v);
            }
            for (auto& [sig, members] : groups) next.push_back(std::move(members));
        }
        const bool stable = next.size() == cells.size();
        cells = std::move(next);
        if (stable) return;
    }
}

inline bool are_twins(const Graph& g, Vertex u, Vertex v) {
    const auto ru = g.row(u);
    const auto rv = g.row(v);
    for (std::size_t w = 0; w < ru.size(); ++w) {
        std::uint64_t diff = ru[w] ^ rv[w];
        if (u / bits::kWordBits == w) diff &= ~(std::uint64_t{1} << (u % bits::kWordBits));
        if (v / bits::kWordBits == w) diff &= ~(std::uint64_t{1} << (v % bits::kWordBits));
        if (diff != 0) return false;
    }
    return true;
}

/// 2-byte big-endian n followed by the RTG payload bits packed MSB first.
inline std::string encode_labeling(const Graph& g, const std::vector<Vertex>& vertex_at) {
    const std::size_t n = g.order();
    std::string out;
    out.push_back(static_cast<char>((n >> 8) & 0xFF));
    out.push_back(static_cast<char>(n & 0xFF));
    unsigned char byte = 0;
    int filled = 0;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            byte = static_cast<unsigned char>((byte << 1) | (g.adjacent(vertex_at[i], vertex_at[j]) ? 1 : 0));
            if (++filled == 8) {
                out.push_back(static_cast<char>(byte));
                byte = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>(byte << (8 - filled)));
    return out;
}

class CanonicalSearch {
public:
    CanonicalSearch(const Graph& g, BudgetMeter& meter) : g_(g), meter_(meter) {}

    std::string run() {
        Cells cells;
        if (g_.order() > 0) cells.push_back(all_vertices(g_.order()));
        refine(g_, cells);
        descend(cells);
        return best_;
    }

private:
    void descend(const Cells& cells) {
        meter_.charge();
        std::size_t target = cells.size();
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c].size() > 1) {
                target = c;
                break;
            }
        if (target == cells.size()) {
            std::vector<Vertex> vertex_at(cells.size());
            for (std::size_t p = 0; p < cells.size(); ++p) vertex_at[p] = cells[p][0];
            std::string code = encode_labeling(g_, vertex_at);
            if (!have_best_ || code < best_) {
                best_ = std::move(code);
                have_best_ = true;
            }
            return;
        }
        const auto& cell = cells[target];
        std::vector<Vertex> tried;
        for (Vertex v : cell) {
            bool redundant = false;
            for (Vertex t : tried)
                if (are_twins(g_, t, v)) {
                    redundant = true;
                    break;
                }
            if (redundant) continue;
            tried.push_back(v);
            Cells child;
            child.reserve(cells.size() + 1);
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c != target) {
                    child.push_back(cells[c]);
                    continue;
                }
                child.push_back({v});
                std::vector<Vertex> rest;
                for (Vertex u : cell)
                    if (u != v) rest.push_back(u);
                child.push_back(std::move(rest));
            }
            refine(g_, child);
            descend(child);
        }
    }

    const Graph& g_;
    BudgetMeter& meter_;
    std::string best_;
    bool have_best_ = false;
};

}  // namespace detail

/// Byte string equal for two graphs exactly when they are isomorphic.
inline std::string canonical_form(const Graph& g, const Budget& budget = {}) {
    if (g.order() > 0xFFFF) throw std::invalid_argument("canonical_form: graph too large");
    BudgetMeter meter(budget.max_orderings, budget.time_limit_seconds, "canonical_form");
    if (g.order() <= 1) return detail::encode_labeling(g, all_vertices(g.order()));
    return detail::CanonicalSearch(g, meter).run();
}

inline std::string to_hex(const std::string& bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

inline bool are_isomorphic(const Graph& g, const Graph& h, const Budget& budget = {}) {
    if (g.order() != h.order() || g.edge_count() != h.edge_count()) return false;
    if (g.degree_sequence_sorted() != h.degree_sequence_sorted()) return false;
    return canonical_form(g, budget) == canonical_form(h, budget);
}

}  // namespace rainbow
