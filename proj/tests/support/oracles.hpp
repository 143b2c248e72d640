#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "rainbow/rainbow.hpp"

namespace oracle {

using namespace rainbow;

/// Seeded generators for property tests.
struct Gen {
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    std::size_t below(std::size_t bound) { return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

    Graph graph(std::size_t n, double p = 0.5) {
        Graph g(n);
        for (Vertex j = 1; j < n; ++j)
            for (Vertex i = 0; i < j; ++i)
                if (coin(p)) g.set_edge(i, j, true);
        return g;
    }

    RainbowSequence sequence(std::size_t k, std::size_t n) {
        std::vector<ColorSymbol> e(n);
        for (auto& s : e) s = {static_cast<Color>(below(k)), static_cast<ColorMask>(below(std::size_t{1} << k))};
        return RainbowSequence(k, std::move(e));
    }

    std::vector<Color> palette_permutation(std::size_t k) {
        std::vector<Color> p(k);
        std::iota(p.begin(), p.end(), Color{0});
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    }

    std::vector<Vertex> vertex_permutation(std::size_t n) {
        std::vector<Vertex> p(n);
        std::iota(p.begin(), p.end(), Vertex{0});
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    }

    VertexSet subset(std::size_t n) {
        VertexSet s;
        for (Vertex v = 0; v < n; ++v)
            if (coin()) s.push_back(v);
        return s;
    }

    std::mt19937_64 rng;
};

/// The edge rule spelled out.
inline Graph edges_by_rule(const RainbowSequence& s) {
    Graph g(s.size());
    for (Vertex j = 0; j < s.size(); ++j)
        for (Vertex i = 0; i < j; ++i)
            if ((s[j].colors >> s[i].color) & 1u) g.set_edge(i, j, true);
    return g;
}

/// Graph on n vertices from the lower-triangle bit pattern used by RTG rows.
inline Graph graph_from_code(std::size_t n, std::uint64_t code) {
    Graph g(n);
    std::size_t bit = 0;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i, ++bit)
            if ((code >> bit) & 1u) g.set_edge(i, j, true);
    return g;
}

/// Does some sequence over [k] generate g? Extends position by position,
/// trying every (a, e) and keeping those whose edges to earlier vertices
/// agree with g. Colors are introduced in first-use order and e ranges over
/// subsets of the colors seen so far, since later bits never touch an edge.
inline std::optional<RainbowSequence> brute_force_ordered(const Graph& g, std::size_t k) {
    const std::size_t n = g.order();
    std::vector<ColorSymbol> entries(n);
    std::function<bool(std::size_t, std::size_t)> extend = [&](std::size_t j, std::size_t used) -> bool {
        if (j == n) return true;
        const std::size_t colors = std::min(k, used + 1);
        for (Color a = 0; a < colors; ++a) {
            for (ColorMask e = 0; e < (ColorMask{1} << used); ++e) {
                bool ok = true;
                for (Vertex i = 0; i < j && ok; ++i)
                    ok = (((e >> entries[i].color) & 1u) != 0) == g.adjacent(i, j);
                if (!ok) continue;
                entries[j] = {a, e};
                if (extend(j + 1, std::max<std::size_t>(used, a + 1))) return true;
            }
        }
        return false;
    };
    if (n > 0 && k == 0) return std::nullopt;
    if (!extend(0, 0)) return std::nullopt;
    return RainbowSequence(k, entries);
}

/// All n! relabelings compared directly.
inline bool brute_isomorphic(const Graph& g, const Graph& h) {
    if (g.order() != h.order()) return false;
    std::vector<Vertex> p(g.order());
    std::iota(p.begin(), p.end(), Vertex{0});
    do {
        if (g.permuted(p) == h) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

/// i and i' conflict iff some later vertex sees exactly one of them.
inline Graph conflict_by_definition(const Graph& g) {
    const std::size_t n = g.order();
    Graph c(n);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex i2 = i + 1; i2 < n; ++i2)
            for (Vertex j = i2 + 1; j < n; ++j)
                if (g.adjacent(i, j) != g.adjacent(i2, j)) {
                    c.set_edge(i, i2, true);
                    break;
                }
    return c;
}

/// Chromatic number by trying every assignment in [k]^n for increasing k.
inline std::size_t brute_chromatic(const Graph& g) {
    const std::size_t n = g.order();
    if (n == 0) return 0;
    for (std::size_t k = 1;; ++k) {
        std::vector<std::size_t> c(n, 0);
        while (true) {
            bool proper = true;
            for (const auto& [u, v] : g.edges())
                if (c[u] == c[v]) {
                    proper = false;
                    break;
                }
            if (proper) return k;
            std::size_t pos = 0;
            while (pos < n && ++c[pos] == k) c[pos++] = 0;
            if (pos == n) break;
        }
    }
}

/// Blocks of A by the pairwise definition: X-members alone, others grouped
/// when they agree on every c in X.
inline std::vector<std::vector<Vertex>> neighborhood_blocks(const Graph& g, const VertexSet& a, const VertexSet& x) {
    std::vector<std::vector<Vertex>> blocks;
    auto in_x = [&](Vertex v) { return std::find(x.begin(), x.end(), v) != x.end(); };
    auto same = [&](Vertex i, Vertex j) {
        for (Vertex c : x)
            if (g.adjacent(i, c) != g.adjacent(j, c)) return false;
        return true;
    };
    for (Vertex v : a) {
        bool placed = false;
        if (!in_x(v)) {
            for (auto& b : blocks)
                if (!in_x(b[0]) && same(b[0], v)) {
                    b.push_back(v);
                    placed = true;
                    break;
                }
        }
        if (!placed) blocks.push_back({v});
    }
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

/// Every window [(r+1) ell, (r+2) ell) for r <= floor(n/ell) - 3 holds every symbol.
inline bool ell_good_by_definition(const RainbowSequence& s, std::size_t ell) {
    const long long blocks = static_cast<long long>(s.size() / ell);
    const std::size_t k = s.palette();
    for (long long r = 0; r <= blocks - 3; ++r) {
        std::set<std::pair<Color, ColorMask>> seen;
        for (std::size_t p = (r + 1) * ell; p < (r + 2) * ell; ++p) seen.insert({s[p].color, s[p].colors});
        if (seen.size() != symbol_count(k)) return false;
    }
    return true;
}

/// Lex-least entry-code sequence over all k! palette permutations.
inline std::vector<std::uint64_t> canonical_codes_by_permutation(const RainbowSequence& s) {
    std::vector<Color> p(s.palette());
    std::iota(p.begin(), p.end(), Color{0});
    std::vector<std::uint64_t> best;
    do {
        const RainbowSequence t = relabel_colors(s, p);
        std::vector<std::uint64_t> codes;
        for (const auto& e : t.entries()) codes.push_back(e.code(t.palette()));
        if (best.empty() || codes < best) best = codes;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

}  // namespace oracle
