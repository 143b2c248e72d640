#pragma once

// Exact vertex coloring by DSATUR branch and bound.

#include <algorithm>
#include <optional>
#include <vector>

#include "rainbow/errors.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/sequence.hpp"

namespace rainbow {

namespace detail {

class DsaturSearch {
public:
    DsaturSearch(const Graph& g, std::size_t k, BudgetMeter* meter)
        : g_(g), n_(g.order()), k_(k), meter_(meter), color_(n_, kNone), counts_(n_ * k, 0), saturation_(n_, 0) {
        degree_.resize(n_);
        for (Vertex v = 0; v < n_; ++v) degree_[v] = g.degree(v);
        adjacency_.resize(n_);
        for (Vertex v = 0; v < n_; ++v)
            for (Vertex u = 0; u < n_; ++u)
                if (u != v && g.adjacent(u, v)) adjacency_[v].push_back(u);
    }

    /// Exhaustive search; returns a coloring with at most k colors if one exists.
    std::optional<std::vector<Color>> solve() {
        if (n_ == 0) return std::vector<Color>{};
        if (k_ == 0) return std::nullopt;
        if (search(0, 0)) {
            std::vector<Color> out(color_.begin(), color_.end());
            return out;
        }
        return std::nullopt;
    }

    /// One greedy DSATUR pass without backtracking.
    std::vector<Color> greedy() {
        for (std::size_t step = 0; step < n_; ++step) {
            const Vertex v = pick();
            Color c = 0;
            while (c < k_ && counts_[v * k_ + c] != 0) ++c;
            assign(v, c);
        }
        return {color_.begin(), color_.end()};
    }

private:
    static constexpr Color kNone = ~Color{0};

    Vertex pick() const {
        Vertex best = n_;
        for (Vertex v = 0; v < n_; ++v) {
            if (color_[v] != kNone) continue;
            if (best == n_ || saturation_[v] > saturation_[best] ||
                (saturation_[v] == saturation_[best] && degree_[v] > degree_[best])) {
                best = v;
            }
        }
        return best;
    }

    void assign(Vertex v, Color c) {
        color_[v] = c;
        for (Vertex u : adjacency_[v])
            if (counts_[u * k_ + c]++ == 0) ++saturation_[u];
    }

    void unassign(Vertex v) {
        const Color c = color_[v];
        color_[v] = kNone;
        for (Vertex u : adjacency_[v])
            if (--counts_[u * k_ + c] == 0) --saturation_[u];
    }

    bool search(std::size_t colored, std::size_t used) {
        if (meter_) meter_->charge();
        if (colored == n_) return true;
        const Vertex v = pick();
        if (saturation_[v] >= k_) return false;
        const std::size_t limit = std::min(k_, used + 1);
        for (Color c = 0; c < limit; ++c) {
            if (counts_[v * k_ + c] != 0) continue;
            assign(v, c);
            if (search(colored + 1, std::max<std::size_t>(used, c + 1))) return true;
            unassign(v);
        }
        return false;
    }

    const Graph& g_;
    std::size_t n_;
    std::size_t k_;
    BudgetMeter* meter_;
    std::vector<Color> color_;
    std::vector<std::uint32_t> counts_;
    std::vector<std::size_t> saturation_;
    std::vector<std::size_t> degree_;
    std::vector<std::vector<Vertex>> adjacency_;
};

}  // namespace detail

/// Proper coloring of g with colors in [k], or nullopt when none exists.
inline std::optional<std::vector<Color>> find_k_coloring(const Graph& g, std::size_t k, BudgetMeter* meter = nullptr) {
    return detail::DsaturSearch(g, k, meter).solve();
}

/// Size of a greedily grown clique; a lower bound on the chromatic number.
inline std::size_t greedy_clique_size(const Graph& g) {
    const std::size_t n = g.order();
    std::size_t best = n == 0 ? 0 : 1;
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    for (Vertex start : order) {
        std::vector<Vertex> clique{start};
        for (Vertex v : order) {
            if (v == start) continue;
            bool all = true;
            for (Vertex c : clique)
                if (!g.adjacent(v, c)) {
                    all = false;
                    break;
                }
            if (all) clique.push_back(v);
        }
        best = std::max(best, clique.size());
    }
    return best;
}

struct Coloring {
    std::size_t colors = 0;
    std::vector<Color> assignment;
};

/// Optimal coloring: DSATUR greedy upper bound, then exact searches with one
/// color fewer until infeasible or the clique bound is met.
inline Coloring chromatic_coloring(const Graph& g, BudgetMeter& meter) {
    const std::size_t n = g.order();
    if (n == 0) return {};
    Coloring best;
    best.assignment = detail::DsaturSearch(g, n, nullptr).greedy();
    best.colors = *std::max_element(best.assignment.begin(), best.assignment.end()) + 1;
    const std::size_t lower = greedy_clique_size(g);
    while (best.colors > lower) {
        auto attempt = find_k_coloring(g, best.colors - 1, &meter);
        if (!attempt) break;
        best.assignment = std::move(*attempt);
        best.colors = *std::max_element(best.assignment.begin(), best.assignment.end()) + 1;
    }
    return best;
}

}  // namespace rainbow
