#pragma once

// Enumeration of RainGraph_k(n), recognition of k-rainbow threshold graphs
// (for the natural order and up to isomorphism), and witness sets that
// certify a graph is not k-rainbow.

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "rainbow/canonical.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/conflict.hpp"
#include "rainbow/core.hpp"
#include "rainbow/equivalence.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/goodness.hpp"

namespace rainbow {

// ---------------------------------------------------------------------------
// Enumeration

/// (k 2^k)^n, or nullopt if it exceeds `cap`.
inline std::optional<std::uint64_t> sequence_space_size(std::size_t k, std::size_t n, std::uint64_t cap) {
    if (k == 0) return n == 0 ? std::optional<std::uint64_t>(1) : std::optional<std::uint64_t>(0);
    if (k > 57) return std::nullopt;
    const std::uint64_t m = symbol_count(k);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > cap / m) return std::nullopt;
        total *= m;
    }
    return total <= cap ? std::optional<std::uint64_t>(total) : std::nullopt;
}

namespace detail {

inline std::uint64_t require_enumerable(std::size_t k, std::size_t n, const Budget& budget, const char* what) {
    auto total = sequence_space_size(k, n, budget.max_sequences);
    if (!total) {
        throw BudgetExceeded(std::string(what) + ": (k*2^k)^n exceeds the sequence budget of " +
                             std::to_string(budget.max_sequences));
    }
    return *total;
}

/// Calls f(span<const ColorSymbol>) for every sequence over [k] of length n in
/// lexicographic order of entry codes (entry 0 most significant).
template <typename F>
void for_each_entries(std::size_t k, std::size_t n, F&& f) {
    if (k == 0) {
        if (n == 0) f(std::span<const ColorSymbol>{});
        return;
    }
    const std::uint64_t m = symbol_count(k);
    std::vector<std::uint64_t> digits(n, 0);
    std::vector<ColorSymbol> entries(n, ColorSymbol::from_code(0, k));
    while (true) {
        f(std::span<const ColorSymbol>(entries));
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < m) {
                entries[pos] = ColorSymbol::from_code(digits[pos], k);
                break;
            }
            digits[pos] = 0;
            entries[pos] = ColorSymbol::from_code(0, k);
            if (pos == 0) return;
        }
        if (n == 0) return;
    }
}

/// RTG payload bits of seq_to_graph(entries) packed into a word; n <= 11.
inline std::uint64_t packed_edges(std::span<const ColorSymbol> entries) {
    std::uint64_t code = 0;
    std::size_t bit = 0;
    for (std::size_t j = 1; j < entries.size(); ++j) {
        const ColorMask e = entries[j].colors;
        for (std::size_t i = 0; i < j; ++i, ++bit)
            if (mask_contains(e, entries[i].color)) code |= std::uint64_t{1} << bit;
    }
    return code;
}

inline Graph unpack_edges(std::size_t n, std::uint64_t code) {
    Graph g(n);
    std::size_t bit = 0;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i, ++bit)
            if ((code >> bit) & 1u) g.set_edge(i, j, true);
    return g;
}

inline constexpr std::size_t kPackedMaxVertices = 11;

}  // namespace detail

/// Visits every sequence in RainSeq_k(n) once, in lexicographic entry-code order.
template <typename F>
void for_each_sequence(std::size_t k, std::size_t n, F&& f, const Budget& budget = {}) {
    detail::require_enumerable(k, n, budget, "enumerate_sequences");
    detail::for_each_entries(k, n, [&](std::span<const ColorSymbol> entries) {
        f(RainbowSequence(k, std::vector<ColorSymbol>(entries.begin(), entries.end())));
    });
}

inline std::vector<RainbowSequence> enumerate_sequences(std::size_t k, std::size_t n, const Budget& budget = {}) {
    std::vector<RainbowSequence> out;
    for_each_sequence(k, n, [&](const RainbowSequence& s) { out.push_back(s); }, budget);
    return out;
}

/// The image of RainSeq_k(n) under seq_to_graph, deduplicated by equality and sorted.
inline std::vector<Graph> enumerate_graphs(std::size_t k, std::size_t n, const Budget& budget = {}) {
    detail::require_enumerable(k, n, budget, "enumerate_graphs");
    std::vector<Graph> out;
    if (n <= detail::kPackedMaxVertices) {
        std::unordered_set<std::uint64_t> codes;
        detail::for_each_entries(k, n, [&](std::span<const ColorSymbol> e) { codes.insert(detail::packed_edges(e)); });
        out.reserve(codes.size());
        for (auto c : codes) out.push_back(detail::unpack_edges(n, c));
    } else {
        std::unordered_set<Graph, GraphHash> graphs;
        detail::for_each_entries(k, n, [&](std::span<const ColorSymbol> e) {
            graphs.insert(seq_to_graph(RainbowSequence(k, std::vector<ColorSymbol>(e.begin(), e.end()))));
        });
        out.assign(graphs.begin(), graphs.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Recognition for the natural vertex order

/// The sequence generating g from a proper coloring of its conflict graph:
/// e(j) holds the colors of earlier neighbours of j and nothing else.
inline RainbowSequence sequence_from_coloring(const Graph& g, std::span<const Color> coloring, std::size_t k) {
    const std::size_t n = g.order();
    std::vector<ColorSymbol> entries(n);
    for (Vertex j = 0; j < n; ++j) {
        ColorMask e = 0;
        for (Vertex i = 0; i < j; ++i)
            if (g.adjacent(i, j)) e |= ColorMask{1} << coloring[i];
        entries[j] = {coloring[j], e};
    }
    return RainbowSequence(k, std::move(entries));
}

/// A sequence over [k] generating g under the natural order, or nullopt.
inline std::optional<RainbowSequence> is_ordered_k_rainbow(const Graph& g, std::size_t k, const Budget& budget = {}) {
    if (k > kMaxPalette) throw std::invalid_argument("is_ordered_k_rainbow: k exceeds the maximum palette size");
    if (g.order() == 0) return RainbowSequence(k, {});
    if (k == 0) return std::nullopt;
    BudgetMeter meter(budget.max_orderings, budget.time_limit_seconds, "is_ordered_k_rainbow");
    const ConflictGraph conflicts = conflict_graph(g);
    auto coloring = find_k_coloring(conflicts.graph(), k, &meter);
    if (!coloring) return std::nullopt;
    return sequence_from_coloring(g, *coloring, k);
}

struct RainbowIndex {
    std::size_t index = 0;
    RainbowSequence witness;
};

/// Least k for which g is an ordered k-rainbow threshold graph (0 for the
/// empty vertex set), with a witness over exactly that palette.
inline RainbowIndex min_ordered_rainbow_index(const Graph& g, const Budget& budget = {}) {
    if (g.order() == 0) return {0, RainbowSequence(0, {})};
    BudgetMeter meter(budget.max_orderings, budget.time_limit_seconds, "min_ordered_rainbow_index");
    const ConflictGraph conflicts = conflict_graph(g);
    Coloring best = chromatic_coloring(conflicts.graph(), meter);
    if (best.colors > kMaxPalette) throw std::invalid_argument("min_ordered_rainbow_index: index exceeds palette limit");
    return {best.colors, sequence_from_coloring(g, best.assignment, best.colors)};
}

// ---------------------------------------------------------------------------
// Recognition up to isomorphism

/// Some X with more outside classes than class_bound(k, |X|). Tries subset
/// sizes where that is arithmetically possible, at most `max_subsets` sets.
inline std::optional<VertexSet> find_certificate(const Graph& g, std::size_t k, std::uint64_t max_subsets = 20000) {
    const std::size_t n = g.order();
    std::uint64_t tried = 0;
    for (std::size_t t = 1; t < n; ++t) {
        const BigInt most = std::min<BigInt>(BigInt(1) << t, BigInt(n - t));
        if (Rational(most) <= class_bound(k, t)) continue;
        VertexSet x(t);
        for (std::size_t i = 0; i < t; ++i) x[i] = i;
        while (true) {
            if (++tried > max_subsets) return std::nullopt;
            if (certify_not_k_rainbow(g, x, k)) return x;
            // next combination
            std::size_t i = t;
            while (i > 0 && x[i - 1] == n - t + (i - 1)) --i;
            if (i == 0) break;
            ++x[i - 1];
            for (std::size_t j = i; j < t; ++j) x[j] = x[j - 1] + 1;
        }
    }
    return std::nullopt;
}

struct OrderedWitness {
    std::vector<Vertex> position;  ///< position[v] = place of original vertex v
    Graph relabeled;               ///< g with v renamed position[v]
    RainbowSequence sequence;      ///< generates `relabeled`
};

namespace detail {

/// Places vertices from the last position backwards. When v takes a
/// position, every vertex after it is known, so its conflicts with all
/// still-unplaced vertices are final; its color is fixed at the same time.
class OrderingSearch {
public:
    OrderingSearch(const Graph& g, std::size_t k, const Budget& budget)
        : g_(g),
          n_(g.order()),
          k_(k),
          meter_(budget.max_orderings, budget.time_limit_seconds, "is_k_rainbow_up_to_iso"),
          color_(n_, 0),
          forbid_counts_(n_ * k, 0),
          forbidden_(n_, 0) {
        rows_.resize(n_);
        for (Vertex v = 0; v < n_; ++v) rows_[v] = g.row(v)[0];
    }

    std::optional<OrderedWitness> run() {
        const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
        if (!dfs(all, 0)) return std::nullopt;
        OrderedWitness w;
        w.position.assign(n_, 0);
        for (std::size_t step = 0; step < placed_.size(); ++step) w.position[placed_[step]] = n_ - 1 - step;
        w.relabeled = g_.permuted(w.position);
        std::vector<Color> coloring(n_);
        for (Vertex v = 0; v < n_; ++v) coloring[w.position[v]] = color_[v];
        w.sequence = sequence_from_coloring(w.relabeled, coloring, k_);
        return w;
    }

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept {
            std::size_t h = key.size();
            for (auto w : key) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        }
    };

    std::vector<std::uint64_t> state_key(std::uint64_t unplaced, std::size_t used) const {
        std::vector<std::uint64_t> key{unplaced, used};
        for (std::uint64_t m = unplaced; m != 0; m &= m - 1) key.push_back(forbidden_[std::countr_zero(m)]);
        return key;
    }

    bool twins(Vertex u, Vertex v) const {
        const std::uint64_t clear = ~((std::uint64_t{1} << u) | (std::uint64_t{1} << v));
        return ((rows_[u] ^ rows_[v]) & clear) == 0;
    }

    bool dfs(std::uint64_t unplaced, std::size_t used) {
        if (unplaced == 0) return true;
        meter_.charge();
        auto key = state_key(unplaced, used);
        if (failed_.count(key)) return false;
        const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
        const std::uint64_t placed_set = all & ~unplaced;
        const ColorMask palette = full_mask(k_);
        std::vector<Vertex> tried;
        for (std::uint64_t m = unplaced; m != 0; m &= m - 1) {
            const Vertex v = static_cast<Vertex>(std::countr_zero(m));
            bool redundant = false;
            for (Vertex t : tried)
                if (twins(t, v)) {
                    redundant = true;
                    break;
                }
            if (redundant) continue;
            tried.push_back(v);

            const std::uint64_t rest = unplaced & ~(std::uint64_t{1} << v);
            std::uint64_t conflicts = 0;
            for (std::uint64_t r = rest; r != 0; r &= r - 1) {
                const Vertex u = static_cast<Vertex>(std::countr_zero(r));
                if (((rows_[u] ^ rows_[v]) & placed_set) != 0) conflicts |= std::uint64_t{1} << u;
            }
            const ColorMask allowed = full_mask(std::min(k_, used + 1)) & ~forbidden_[v];
            for (ColorMask a = allowed; a != 0; a &= a - 1) {
                const Color c = static_cast<Color>(std::countr_zero(a));
                bool dead = false;
                for (std::uint64_t r = conflicts; r != 0; r &= r - 1) {
                    const Vertex u = static_cast<Vertex>(std::countr_zero(r));
                    if (forbid_counts_[u * k_ + c]++ == 0) forbidden_[u] |= ColorMask{1} << c;
                    if ((forbidden_[u] & palette) == palette) dead = true;
                }
                if (!dead) {
                    color_[v] = c;
                    placed_.push_back(v);
                    if (dfs(rest, std::max<std::size_t>(used, c + 1))) return true;
                    placed_.pop_back();
                }
                for (std::uint64_t r = conflicts; r != 0; r &= r - 1) {
                    const Vertex u = static_cast<Vertex>(std::countr_zero(r));
                    if (--forbid_counts_[u * k_ + c] == 0) forbidden_[u] &= ~(ColorMask{1} << c);
                }
            }
        }
        failed_.insert(std::move(key));
        return false;
    }

    const Graph& g_;
    std::size_t n_;
    std::size_t k_;
    BudgetMeter meter_;
    std::vector<std::uint64_t> rows_;
    std::vector<Color> color_;
    std::vector<std::uint32_t> forbid_counts_;
    std::vector<ColorMask> forbidden_;
    std::vector<Vertex> placed_;
    std::unordered_set<std::vector<std::uint64_t>, KeyHash> failed_;
};

}  // namespace detail

/// A vertex order under which g is an ordered k-rainbow threshold graph, or
/// nullopt. Throws BudgetExceeded above budget.max_iso_vertices vertices.
inline std::optional<OrderedWitness> find_rainbow_ordering(const Graph& g, std::size_t k, const Budget& budget = {}) {
    const std::size_t n = g.order();
    if (n > budget.max_iso_vertices) {
        throw BudgetExceeded("is_k_rainbow_up_to_iso: n=" + std::to_string(n) + " exceeds the vertex budget of " +
                             std::to_string(budget.max_iso_vertices));
    }
    if (n > 64) throw BudgetExceeded("is_k_rainbow_up_to_iso: at most 64 vertices are supported");
    if (k > kMaxPalette) throw std::invalid_argument("is_k_rainbow_up_to_iso: k exceeds the maximum palette size");
    if (n == 0) return OrderedWitness{{}, g, RainbowSequence(k, {})};
    if (k == 0) return std::nullopt;
    if (auto natural = is_ordered_k_rainbow(g, k, budget)) {
        return OrderedWitness{all_vertices(n), g, *natural};
    }
    if (find_certificate(g, k)) return std::nullopt;
    return detail::OrderingSearch(g, k, budget).run();
}

inline bool is_k_rainbow_up_to_iso(const Graph& g, std::size_t k, const Budget& budget = {}) {
    return find_rainbow_ordering(g, k, budget).has_value();
}

// ---------------------------------------------------------------------------
// Witness sets

enum class WitnessFailure {
    palette_too_small,  ///< need k + 1 >= 2 colors
    not_good,           ///< sequence is not ell-good
    too_few_blocks,     ///< floor(n/ell) below the separation threshold
    prefix,             ///< (a) first window lacks a color
    suffix,             ///< (b) last window lacks a color set
    middle,             ///< (c) no room for spread-out middle points
    recovery,           ///< (d) prefix/suffix cannot recover colors and sets
    size,               ///< (e) |X| above the admissible range
    certificate,        ///< class count did not exceed the bound
};

inline const char* to_string(WitnessFailure f) {
    switch (f) {
        case WitnessFailure::palette_too_small: return "palette_too_small";
        case WitnessFailure::not_good: return "not_good";
        case WitnessFailure::too_few_blocks: return "too_few_blocks";
        case WitnessFailure::prefix: return "condition_a_prefix";
        case WitnessFailure::suffix: return "condition_b_suffix";
        case WitnessFailure::middle: return "condition_c_middle";
        case WitnessFailure::recovery: return "condition_d_recovery";
        case WitnessFailure::size: return "condition_e_size";
        case WitnessFailure::certificate: return "certificate";
    }
    return "unknown";
}

class WitnessError : public std::runtime_error {
public:
    WitnessError(WitnessFailure f, const std::string& detail)
        : std::runtime_error(std::string(to_string(f)) + ": " + detail), failure_(f) {}
    WitnessFailure failure() const noexcept { return failure_; }

private:
    WitnessFailure failure_;
};

struct WitnessSet {
    VertexSet x;                 ///< x_0 < ... < x_{t-1}
    std::size_t prefix_size = 0;  ///< points in the first window, one per color
    std::size_t middle_size = 0;  ///< one point at the start of every other window
    std::size_t suffix_size = 0;  ///< points in the last window, one per color set
    std::size_t k = 0;            ///< the smaller palette being excluded
    std::size_t classes = 0;      ///< outside classes of X in seq_to_graph(S)
    Rational bound;               ///< class_bound(k, |X|)

    std::size_t t() const noexcept { return x.size(); }
};

/// floor(n/ell) needed to separate (k+1)-rainbow from k-rainbow graphs:
/// (k+1) 2^{k+1} (k+1 + 2^{k+1}).
inline std::uint64_t separation_block_threshold(std::size_t k) {
    const std::uint64_t kp = k + 1;
    return kp * (std::uint64_t{1} << kp) * (kp + (std::uint64_t{1} << kp));
}

/// Builds X for an ell-good sequence S over k+1 colors such that the outside
/// classes of X in seq_to_graph(S) exceed class_bound(k, |X|), which rules out
/// seq_to_graph(S) being isomorphic to any k-rainbow threshold graph.
///
/// With R = floor(n/ell) - 3 and windows I_r = [(r+1) ell, (r+2) ell):
/// the prefix takes the leftmost vertex of each color in I_0, the suffix the
/// leftmost vertex of each color set in I_R, and the middle the first vertex
/// of I_2, I_4, ... up to I_{R-2}, so that a complete window separates any two
/// consecutive points of X.
inline WitnessSet build_witness_set(const RainbowSequence& s, std::size_t ell) {
    const std::size_t palette = s.palette();
    const std::size_t n = s.size();
    if (palette < 2 || palette > 16) {
        throw WitnessError(WitnessFailure::palette_too_small, "need a palette of 2..16 colors");
    }
    if (ell == 0) throw std::invalid_argument("build_witness_set: ell must be positive");
    const std::size_t k = palette - 1;
    const std::size_t blocks = n / ell;
    if (blocks < separation_block_threshold(k)) {
        throw WitnessError(WitnessFailure::too_few_blocks,
                           "floor(n/ell)=" + std::to_string(blocks) + " < " +
                               std::to_string(separation_block_threshold(k)));
    }
    if (!is_ell_good_seq(s, ell)) throw WitnessError(WitnessFailure::not_good, "sequence is not ell-good");

    const std::size_t last = blocks - 3;
    auto window_begin = [&](std::size_t r) { return (r + 1) * ell; };

    WitnessSet w;
    w.k = k;
    VertexSet prefix;
    for (Color c = 0; c < palette; ++c) {
        bool found = false;
        for (Vertex p = window_begin(0); p < window_begin(1) && !found; ++p)
            if (s[p].color == c) {
                prefix.push_back(p);
                found = true;
            }
        if (!found) throw WitnessError(WitnessFailure::prefix, "color " + std::to_string(c) + " missing from I_0");
    }
    std::sort(prefix.begin(), prefix.end());

    VertexSet suffix;
    for (ColorMask e = 0; e <= full_mask(palette); ++e) {
        bool found = false;
        for (Vertex p = window_begin(last); p < window_begin(last + 1) && !found; ++p)
            if (s[p].colors == e) {
                suffix.push_back(p);
                found = true;
            }
        if (!found) throw WitnessError(WitnessFailure::suffix, "a color set is missing from the last window");
    }
    std::sort(suffix.begin(), suffix.end());

    VertexSet middle;
    for (std::size_t r = 2; r + 2 <= last; r += 2) middle.push_back(window_begin(r));
    if (middle.empty()) throw WitnessError(WitnessFailure::middle, "no window pair between prefix and suffix");

    if (!has_all_colors(s, prefix) || !separates_all_colors(s, suffix) || !distinguishes_all_colors(s, suffix)) {
        throw WitnessError(WitnessFailure::recovery, "prefix/suffix do not recover colors and color sets");
    }

    w.x = prefix;
    w.x.insert(w.x.end(), middle.begin(), middle.end());
    w.x.insert(w.x.end(), suffix.begin(), suffix.end());
    w.prefix_size = prefix.size();
    w.middle_size = middle.size();
    w.suffix_size = suffix.size();

    const std::size_t upper = blocks + k + (std::size_t{1} << (k + 1)) - 4;
    if (w.t() > upper) {
        throw WitnessError(WitnessFailure::size, "t=" + std::to_string(w.t()) + " > " + std::to_string(upper));
    }

    w.classes = count_outside_classes(seq_to_graph(s), w.x);
    w.bound = class_bound(k, w.t());
    if (Rational(w.classes) <= w.bound) {
        throw WitnessError(WitnessFailure::certificate, std::to_string(w.classes) + " classes <= bound " +
                                                            rational_string(w.bound));
    }
    return w;
}

/// The sequence over k+1 colors whose entry p carries symbol p mod (k+1) 2^{k+1};
/// every ell-aligned window with ell a multiple of the symbol count is complete.
inline RainbowSequence cycling_sequence(std::size_t k, std::size_t n) {
    const std::size_t palette = k + 1;
    const std::uint64_t m = symbol_count(palette);
    std::vector<ColorSymbol> entries(n);
    for (std::size_t p = 0; p < n; ++p) entries[p] = ColorSymbol::from_code(p % m, palette);
    return RainbowSequence(palette, std::move(entries));
}

}  // namespace rainbow
