#pragma once

// Rainbow sequences and the sequence -> graph construction.

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/sequence.hpp"

namespace rainbow {

/// Edge {i, j} with i < j iff a(i) is in e(j).
inline Graph seq_to_graph(const RainbowSequence& s) {
    const std::size_t n = s.size();
    Graph g(n);
    for (Vertex j = 1; j < n; ++j) {
        const ColorMask ej = s[j].colors;
        if (ej == 0) continue;
        for (Vertex i = 0; i < j; ++i) {
            if (mask_contains(ej, s[i].color)) g.set_edge(i, j, true);
        }
    }
    return g;
}

inline RainbowSequence restrict_sequence(const RainbowSequence& s, const VertexSet& keep) {
    check_vertex_set(keep, s.size(), "restrict_sequence");
    std::vector<ColorSymbol> out;
    out.reserve(keep.size());
    for (Vertex v : keep) out.push_back(s[v]);
    return RainbowSequence(s.palette(), std::move(out));
}

/// Induced subgraph on `keep`, vertices renumbered by rank.
inline Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
    check_vertex_set(keep, g.order(), "induced_subgraph");
    Graph h(keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = a + 1; b < keep.size(); ++b)
            if (g.adjacent(keep[a], keep[b])) h.set_edge(a, b, true);
    return h;
}

inline ColorMask relabel_mask(ColorMask m, std::span<const Color> perm) {
    ColorMask out = 0;
    while (m != 0) {
        const int c = std::countr_zero(m);
        out |= ColorMask{1} << perm[static_cast<std::size_t>(c)];
        m &= m - 1;
    }
    return out;
}

/// Applies the palette permutation c -> perm[c] to every color and color set.
inline RainbowSequence relabel_colors(const RainbowSequence& s, std::span<const Color> perm) {
    const std::size_t k = s.palette();
    if (perm.size() != k) throw std::invalid_argument("relabel_colors: permutation size must equal k");
    std::vector<bool> seen(k, false);
    for (Color c : perm) {
        if (c >= k || seen[c]) throw std::invalid_argument("relabel_colors: not a permutation of [k]");
        seen[c] = true;
    }
    std::vector<ColorSymbol> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[i] = {perm[s[i].color], relabel_mask(s[i].colors, perm)};
    }
    return RainbowSequence(k, std::move(out));
}

/// Lexicographically least sequence similar to `s`, comparing entry codes
/// a * 2^k + e position by position.
///
/// The permutations achieving the least prefix always form an ordered
/// partition of the palette into blocks of consecutive target labels. Each
/// entry refines it: the block holding a(i) hands its lowest label to a(i),
/// then every block splits into the colors in e(i) (lower labels) followed by
/// the rest. Blocks that stay non-singleton hold interchangeable colors.
inline RainbowSequence canonicalize_sequence(const RainbowSequence& s) {
    const std::size_t k = s.palette();
    if (k == 0) return s;
    // blocks[b] lists colors; block order gives label order.
    std::vector<std::vector<Color>> blocks(1);
    blocks[0].resize(k);
    std::iota(blocks[0].begin(), blocks[0].end(), Color{0});

    auto split = [&](auto&& goes_first) {
        std::vector<std::vector<Color>> next;
        next.reserve(blocks.size() + 2);
        for (auto& block : blocks) {
            std::vector<Color> first, second;
            for (Color c : block) (goes_first(c) ? first : second).push_back(c);
            if (!first.empty()) next.push_back(std::move(first));
            if (!second.empty()) next.push_back(std::move(second));
        }
        blocks = std::move(next);
    };

    for (std::size_t i = 0; i < s.size() && blocks.size() < k; ++i) {
        const Color a = s[i].color;
        const ColorMask e = s[i].colors;
        split([a](Color c) { return c == a; });
        split([e](Color c) { return mask_contains(e, c); });
    }

    std::vector<Color> perm(k);
    Color next_label = 0;
    for (const auto& block : blocks)
        for (Color c : block) perm[c] = next_label++;
    return relabel_colors(s, perm);
}

inline bool sequences_similar(const RainbowSequence& s0, const RainbowSequence& s1) {
    if (s0.palette() != s1.palette() || s0.size() != s1.size()) {
        throw std::invalid_argument("sequences_similar: sequences differ in k or n");
    }
    return canonicalize_sequence(s0) == canonicalize_sequence(s1);
}

/// Palette [n], a = identity, e(i) = earlier neighbours of i. Throws
/// std::length_error when n exceeds kMaxPalette.
inline RainbowSequence embed_as_full_rainbow(const Graph& g) {
    const std::size_t n = g.order();
    if (n > kMaxPalette) {
        throw std::length_error("embed_as_full_rainbow: n exceeds the maximum palette size");
    }
    std::vector<ColorSymbol> out(n);
    for (Vertex i = 0; i < n; ++i) {
        ColorMask e = 0;
        for (Vertex j = 0; j < i; ++j)
            if (g.adjacent(i, j)) e |= ColorMask{1} << j;
        out[i] = {static_cast<Color>(i), e};
    }
    return RainbowSequence(n, std::move(out));
}

inline RainbowSequence widen_palette(const RainbowSequence& s, std::size_t wider) {
    if (wider < s.palette()) throw std::invalid_argument("widen_palette: new palette is smaller than k");
    return RainbowSequence(wider, s.entries());
}

inline bool has_all_colors(const RainbowSequence& s, const VertexSet& region) {
    check_vertex_set(region, s.size(), "has_all_colors");
    ColorMask seen = 0;
    for (Vertex v : region) seen |= ColorMask{1} << s[v].color;
    return seen == full_mask(s.palette());
}

/// Every color is in e(x) for some x in the region and outside e(y) for some y.
inline bool separates_all_colors(const RainbowSequence& s, const VertexSet& region) {
    check_vertex_set(region, s.size(), "separates_all_colors");
    ColorMask somewhere_in = 0;
    ColorMask somewhere_out = 0;
    for (Vertex v : region) {
        somewhere_in |= s[v].colors;
        somewhere_out |= ~s[v].colors;
    }
    const ColorMask full = full_mask(s.palette());
    return (somewhere_in & full) == full && (somewhere_out & full) == full;
}

/// Every pair of distinct colors is told apart by some e(x), x in the region:
/// exactly one of the two is a member. This is what recovering a(i) from
/// adjacency to a later region actually needs; separates_all_colors is weaker
/// for k >= 2.
inline bool distinguishes_all_colors(const RainbowSequence& s, const VertexSet& region) {
    check_vertex_set(region, s.size(), "distinguishes_all_colors");
    const std::size_t k = s.palette();
    for (Color c0 = 0; c0 < k; ++c0) {
        for (Color c1 = c0 + 1; c1 < k; ++c1) {
            bool told_apart = false;
            for (Vertex v : region) {
                if (mask_contains(s[v].colors, c0) != mask_contains(s[v].colors, c1)) {
                    told_apart = true;
                    break;
                }
            }
            if (!told_apart) return false;
        }
    }
    return true;
}

}  // namespace rainbow
