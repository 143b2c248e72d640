#pragma once

// ell-goodness of sequences and graphs, and the closed-form counting bounds
// built on delta_{k,n}(ell).

#include <cmath>
#include <optional>
#include <vector>

#include <json.hpp>

#include "rainbow/conflict.hpp"
#include "rainbow/core.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/rational.hpp"

namespace rainbow {

/// Number of windows [(r+1) ell, (r+2) ell) checked for goodness, one per
/// r = 0 .. floor(n/ell) - 3.
inline std::size_t window_count(std::size_t n, std::size_t ell) {
    if (ell == 0) throw std::invalid_argument("ell must be positive");
    const std::size_t blocks = n / ell;
    return blocks >= 3 ? blocks - 2 : 0;
}

/// Per-window verdict: window r holds every one of the k * 2^k symbols.
inline std::vector<bool> ell_good_windows(const RainbowSequence& s, std::size_t ell) {
    const std::size_t windows = window_count(s.size(), ell);
    const std::size_t k = s.palette();
    std::vector<bool> out(windows, false);
    if (windows == 0) return out;
    const std::uint64_t symbols = symbol_count(k);
    std::vector<std::uint64_t> codes;
    for (std::size_t r = 0; r < windows; ++r) {
        if (ell < symbols) continue;
        codes.clear();
        for (std::size_t p = (r + 1) * ell; p < (r + 2) * ell; ++p) codes.push_back(s[p].code(k));
        std::sort(codes.begin(), codes.end());
        out[r] = static_cast<std::uint64_t>(std::unique(codes.begin(), codes.end()) - codes.begin()) == symbols;
    }
    return out;
}

inline bool is_ell_good_seq(const RainbowSequence& s, std::size_t ell) {
    for (bool ok : ell_good_windows(s, ell))
        if (!ok) return false;
    return true;
}

namespace detail {

class GoodSequenceSearch {
public:
    GoodSequenceSearch(const Graph& g, std::size_t k, std::size_t ell, const Budget& budget)
        : g_(g),
          conflicts_(conflict_graph(g)),
          k_(k),
          ell_(ell),
          symbols_(symbol_count(k)),
          windows_(window_count(g.order(), ell)),
          meter_(budget.max_sequences, budget.time_limit_seconds, "is_ell_good_graph"),
          entries_(g.order()) {}

    std::optional<RainbowSequence> run() {
        // A window shorter than the symbol count can never be complete.
        if (windows_ > 0 && ell_ < symbols_) return std::nullopt;
        if (dfs(0, 0)) return RainbowSequence(k_, entries_);
        return std::nullopt;
    }

private:
    bool window_complete(std::size_t r) const {
        std::vector<std::uint64_t> codes;
        codes.reserve(ell_);
        for (std::size_t p = (r + 1) * ell_; p < (r + 2) * ell_; ++p) codes.push_back(entries_[p].code(k_));
        std::sort(codes.begin(), codes.end());
        return static_cast<std::uint64_t>(std::unique(codes.begin(), codes.end()) - codes.begin()) == symbols_;
    }

    bool dfs(Vertex j, std::size_t colors_used) {
        meter_.charge();
        const std::size_t n = g_.order();
        if (j == n) return true;
        // Colors already used before j fix e(j) on those colors.
        const std::size_t palette_limit = std::min(k_, colors_used + 1);
        for (Color a = 0; a < palette_limit; ++a) {
            bool proper = true;
            for (Vertex i = 0; i < j && proper; ++i)
                if (entries_[i].color == a && conflicts_.conflicting(i, j)) proper = false;
            if (!proper) continue;
            ColorMask forced = 0;
            for (Vertex i = 0; i < j; ++i)
                if (g_.adjacent(i, j)) forced |= ColorMask{1} << entries_[i].color;
            const ColorMask used = full_mask(colors_used);
            const ColorMask free = full_mask(k_) & ~used;
            // Enumerate subsets of the free colors.
            ColorMask sub = 0;
            while (true) {
                entries_[j] = {a, forced | sub};
                const std::size_t next_used = std::max<std::size_t>(colors_used, a + 1);
                if (window_ok_after(j) && dfs(j + 1, next_used)) return true;
                if (sub == free) break;
                sub = (sub - free) & free;
            }
        }
        return false;
    }

    /// If j closes a window, that window must be complete.
    bool window_ok_after(Vertex j) const {
        if (windows_ == 0) return true;
        if ((j + 1) % ell_ != 0) return true;
        const std::size_t block = (j + 1) / ell_;  // window covers [(block-1) ell, block ell)
        if (block < 2 || block - 2 >= windows_) return true;
        return window_complete(block - 2);
    }

    const Graph& g_;
    ConflictGraph conflicts_;
    std::size_t k_;
    std::size_t ell_;
    std::uint64_t symbols_;
    std::size_t windows_;
    BudgetMeter meter_;
    std::vector<ColorSymbol> entries_;
};

}  // namespace detail

/// Some ell-good sequence over [k] generating g, or nullopt. Searches only
/// sequences that generate g: proper colorings of the conflict graph, with
/// e(j) forced on colors already used before j and free elsewhere.
inline std::optional<RainbowSequence> find_ell_good_sequence(const Graph& g, std::size_t k, std::size_t ell,
                                                             const Budget& budget = {}) {
    if (k == 0 || k > kMaxPalette) throw std::invalid_argument("find_ell_good_sequence: bad palette size");
    if (ell == 0) throw std::invalid_argument("find_ell_good_sequence: ell must be positive");
    return detail::GoodSequenceSearch(g, k, ell, budget).run();
}

inline bool is_ell_good_graph(const Graph& g, std::size_t k, std::size_t ell, const Budget& budget = {}) {
    return find_ell_good_sequence(g, k, ell, budget).has_value();
}

// ---------------------------------------------------------------------------
// Closed-form bounds

namespace detail {

inline void require_bound_args(std::size_t k, std::size_t ell) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    if (ell == 0) throw std::invalid_argument("ell must be positive");
    if (k > 16) throw std::invalid_argument("k too large for exact bound evaluation");
}

/// Guards exact powers of k * 2^k against absurd sizes.
inline void require_exact_size(std::size_t k, std::uint64_t exponent) {
    const double bits = static_cast<double>(exponent) * std::log2(static_cast<double>(symbol_count(k)));
    if (bits > static_cast<double>(1u << 24)) {
        throw std::invalid_argument("parameters too large for exact rational evaluation");
    }
}

}  // namespace detail

/// floor(n/ell) * k 2^k * (1 - 1/(k 2^k))^ell
inline Rational delta(std::size_t k, std::size_t n, std::size_t ell) {
    detail::require_bound_args(k, ell);
    const std::size_t blocks = n / ell;
    if (blocks == 0) return Rational(0);
    detail::require_exact_size(k, ell);
    const BigInt m = BigInt(symbol_count(k));
    return Rational(BigInt(blocks) * m) * rational_pow(Rational(m - 1, m), ell);
}

/// (k 2^k)^n * delta: bounds the number of non-ell-good sequences, hence of
/// non-ell-good graphs.
inline Rational non_good_sequence_upper(std::size_t k, std::size_t n, std::size_t ell) {
    const Rational d = delta(k, n, ell);
    detail::require_exact_size(k, n);
    return Rational(big_pow(BigInt(symbol_count(k)), n)) * d;
}

/// (k 2^k)^{k + 2^k} * k!
inline BigInt recovery_multiplier(std::size_t k) {
    return big_pow(BigInt(symbol_count(k)), k + (std::uint64_t{1} << k)) * factorial(k);
}

/// (k 2^k)^n (1 - delta) / ((k 2^k)^{k + 2^k} k!). Nonpositive (vacuous) when delta >= 1.
inline Rational good_graph_lower(std::size_t k, std::size_t n, std::size_t ell) {
    const Rational d = delta(k, n, ell);
    detail::require_exact_size(k, n);
    return Rational(big_pow(BigInt(symbol_count(k)), n)) * (Rational(1) - d) / Rational(recovery_multiplier(k));
}

/// delta/(1-delta) * (k 2^k)^{k + 2^k} * k!; nullopt when delta >= 1.
inline std::optional<Rational> non_good_fraction_upper(std::size_t k, std::size_t n, std::size_t ell) {
    const Rational d = delta(k, n, ell);
    if (d >= 1) return std::nullopt;
    return d / (Rational(1) - d) * Rational(recovery_multiplier(k));
}

struct AasHypotheses {
    bool floor_ratio_ok = false;    ///< floor(n/ell) >= 2^{3k+3}
    bool n_threshold_ok = false;    ///< n >= -2^{4k+7} / log2(1 - 1/((k+1) 2^{k+1}))
    bool proposition_ok = false;    ///< floor(n/ell) >= (k+1) 2^{k+1} (k+1 + 2^{k+1})
    long double n_threshold = 0.0L;
};

/// log2(1 - 1/((k+1) 2^{k+1}))
inline long double log2_separation_base(std::size_t k) {
    const long double m = std::ldexp(static_cast<long double>(k + 1), static_cast<int>(k + 1));
    return std::log1p(-1.0L / m) / std::log(2.0L);
}

inline AasHypotheses aas_hypotheses_ok(std::size_t k, std::size_t n, std::size_t ell) {
    if (k == 0 || n == 0 || ell == 0) throw std::invalid_argument("aas_hypotheses_ok: inputs must be positive");
    if (k > 200) throw std::invalid_argument("aas_hypotheses_ok: k too large");
    AasHypotheses h;
    const BigInt blocks = BigInt(n / ell);
    h.floor_ratio_ok = blocks >= (BigInt(1) << (3 * k + 3));
    h.n_threshold = -std::ldexp(1.0L, static_cast<int>(4 * k + 7)) / log2_separation_base(k);
    h.n_threshold_ok = static_cast<long double>(n) >= h.n_threshold;
    const BigInt kp = BigInt(k + 1);
    const BigInt two_kp = BigInt(1) << (k + 1);
    h.proposition_ok = blocks >= kp * two_kp * (kp + two_kp);
    return h;
}

struct AasBound {
    long double log2 = 0.0L;
    std::optional<double> value;  ///< present when representable as a double
};

/// ((1 - 1/((k+1) 2^{k+1}))^{1/2^{3k+3}})^n * 2^{2^{3k+5}}, in log2 form.
inline AasBound aas_bound(std::size_t k, std::size_t n) {
    if (k == 0 || n == 0) throw std::invalid_argument("aas_bound: k and n must be positive");
    if (3 * k + 5 > 16000) throw std::invalid_argument("aas_bound: k too large");
    AasBound b;
    b.log2 = std::ldexp(static_cast<long double>(n), -static_cast<int>(3 * k + 3)) * log2_separation_base(k) +
             std::ldexp(1.0L, static_cast<int>(3 * k + 5));
    if (b.log2 < 1000.0L && b.log2 > -1000.0L) b.value = static_cast<double>(std::exp2(b.log2));
    return b;
}

struct BoundReport {
    std::size_t k = 0, n = 0, ell = 0;
    Rational delta;
    Rational non_good_seq_upper;
    Rational good_graph_lower;
    bool good_graph_lower_vacuous = false;
    std::optional<Rational> non_good_fraction_upper;
    AasHypotheses hypotheses;
    AasBound aas;
};

inline BoundReport make_bound_report(std::size_t k, std::size_t n, std::size_t ell) {
    BoundReport r;
    r.k = k;
    r.n = n;
    r.ell = ell;
    r.delta = delta(k, n, ell);
    r.non_good_seq_upper = non_good_sequence_upper(k, n, ell);
    r.good_graph_lower = good_graph_lower(k, n, ell);
    r.good_graph_lower_vacuous = r.good_graph_lower <= 0;
    r.non_good_fraction_upper = non_good_fraction_upper(k, n, ell);
    if (n > 0) {
        r.hypotheses = aas_hypotheses_ok(k, n, ell);
        r.aas = aas_bound(k, n);
    }
    return r;
}

inline std::string long_double_string(long double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline nlohmann::ordered_json bound_report_to_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["k"] = r.k;
    j["n"] = r.n;
    j["ell"] = r.ell;
    j["delta"] = rational_json(r.delta);
    j["non_good_seq_upper"] = rational_json(r.non_good_seq_upper);
    j["good_graph_lower"] = rational_json(r.good_graph_lower);
    j["good_graph_lower_vacuous"] = r.good_graph_lower_vacuous;
    if (r.non_good_fraction_upper) {
        j["non_good_fraction_upper"] = rational_json(*r.non_good_fraction_upper);
    } else {
        j["non_good_fraction_upper"] = nullptr;
    }
    nlohmann::ordered_json h;
    h["floor_ratio_ok"] = r.hypotheses.floor_ratio_ok;
    h["n_threshold_ok"] = r.hypotheses.n_threshold_ok;
    h["proposition_ok"] = r.hypotheses.proposition_ok;
    h["n_threshold"] = long_double_string(r.hypotheses.n_threshold);
    j["hypotheses_ok"] = std::move(h);
    nlohmann::ordered_json a;
    a["log2"] = long_double_string(r.aas.log2);
    if (r.aas.value) {
        a["value"] = *r.aas.value;
    } else {
        a["value"] = nullptr;
    }
    j["aas_bound"] = std::move(a);
    return j;
}

}  // namespace rainbow
