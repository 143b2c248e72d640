#include <gtest/gtest.h>

#include <cmath>

#include "support/oracles.hpp"

using namespace rainbow;

namespace {

RainbowSequence threshold_from_bits(std::initializer_list<int> bits) {
    std::vector<bool> b;
    for (int x : bits) b.push_back(x != 0);
    return threshold_sequence(b);
}

}  // namespace

TEST(WindowCount, Examples) {
    EXPECT_EQ(window_count(8, 2), 2u);
    EXPECT_EQ(window_count(5, 2), 0u);
    EXPECT_EQ(window_count(6, 2), 1u);
    EXPECT_EQ(window_count(384, 8), 46u);
    EXPECT_THROW(window_count(4, 0), std::invalid_argument);
}

TEST(EllGoodSeq, Examples) {
    // floor(n/ell) < 3: nothing to check
    EXPECT_TRUE(is_ell_good_seq(threshold_from_bits({0, 0, 0, 0, 0}), 2));
    EXPECT_TRUE(is_ell_good_seq(threshold_from_bits({0, 0, 0, 1, 0, 1, 0, 0}), 2));
    EXPECT_FALSE(is_ell_good_seq(threshold_from_bits({0, 0, 0, 0, 0, 1, 0, 0}), 2));
    EXPECT_EQ(ell_good_windows(threshold_from_bits({0, 0, 0, 0, 0, 1, 0, 0}), 2), (std::vector<bool>{false, true}));
    // windows too small for all k 2^k symbols
    EXPECT_FALSE(is_ell_good_seq(cycling_sequence(1, 40), 4));
    EXPECT_TRUE(is_ell_good_seq(cycling_sequence(1, 40), 8));
}

TEST(EllGoodSeq, MatchesDefinition) {
    oracle::Gen gen(41);
    for (int trial = 0; trial < 5000; ++trial) {
        const std::size_t k = 1 + gen.below(2);
        const std::size_t n = gen.below(40);
        const std::size_t ell = 1 + gen.below(10);
        // biased toward complete windows
        const RainbowSequence s = gen.coin() ? gen.sequence(k, n) : cycling_sequence(k - 1, n);
        EXPECT_EQ(is_ell_good_seq(s, ell), oracle::ell_good_by_definition(s, ell));
    }
}

TEST(EllGoodSeq, AppendingNeverBreaksAWindow) {
    oracle::Gen gen(42);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t k = 1 + gen.below(2);
        const std::size_t ell = 1 + gen.below(6);
        const auto s = gen.sequence(k, gen.below(40));
        auto longer = s.entries();
        const auto extra = gen.sequence(k, gen.below(10));
        longer.insert(longer.end(), extra.entries().begin(), extra.entries().end());
        const auto before = ell_good_windows(s, ell);
        const auto after = ell_good_windows(RainbowSequence(k, longer), ell);
        ASSERT_LE(before.size(), after.size());
        EXPECT_TRUE(std::equal(before.begin(), before.end(), after.begin()));
    }
}

TEST(EllGoodGraph, AgreesWithExhaustiveFilter) {
    for (std::size_t n : {6u, 8u, 9u, 10u}) {
        for (std::size_t ell : {1u, 2u, 3u}) {
            std::set<Graph> good;
            for_each_sequence(1, n, [&](const RainbowSequence& s) {
                if (is_ell_good_seq(s, ell)) good.insert(seq_to_graph(s));
            });
            for (const Graph& g : enumerate_graphs(1, n)) {
                const auto w = find_ell_good_sequence(g, 1, ell);
                ASSERT_EQ(w.has_value(), good.count(g) > 0) << "n=" << n << " ell=" << ell;
                if (w) {
                    EXPECT_TRUE(is_ell_good_seq(*w, ell));
                    EXPECT_EQ(seq_to_graph(*w), g);
                }
            }
        }
    }
}

TEST(EllGoodGraph, TwoColorsExhaustive) {
    // ell = 2 can never hold 8 symbols; the answer is "member and no windows".
    for (std::size_t n = 0; n <= 6; ++n) {
        std::set<Graph> good;
        for_each_sequence(2, n, [&](const RainbowSequence& s) {
            if (is_ell_good_seq(s, 2)) good.insert(seq_to_graph(s));
        });
        for (const Graph& g : enumerate_graphs(2, n)) EXPECT_EQ(is_ell_good_graph(g, 2, 2), good.count(g) > 0);
    }
}

TEST(EllGoodGraph, Examples) {
    const Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    EXPECT_FALSE(is_ell_good_graph(p4, 1, 1));
    EXPECT_FALSE(is_ell_good_graph(p4, 3, 1));
    EXPECT_TRUE(is_ell_good_graph(p4, 3, 2));
    EXPECT_TRUE(is_ell_good_graph(Graph::complete(5), 1, 2));
    const auto cyc = cycling_sequence(1, 48);
    const auto w = find_ell_good_sequence(seq_to_graph(cyc), 2, 8);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(is_ell_good_seq(*w, 8));
    EXPECT_EQ(seq_to_graph(*w), seq_to_graph(cyc));
    Budget tiny;
    tiny.max_sequences = 3;
    EXPECT_THROW(find_ell_good_sequence(Graph(40), 2, 8, tiny), BudgetExceeded);
}

TEST(Delta, Substitution) {
    EXPECT_EQ(delta(1, 16, 4), Rational(1, 2));
    EXPECT_EQ(delta(1, 3, 4), Rational(0));
    EXPECT_EQ(delta(2, 8, 8), Rational(5764801, 2097152));
    EXPECT_NEAR(to_double(delta(2, 8, 8)), 2.7488, 1e-4);
    EXPECT_EQ(delta(1, 8, 4), Rational(1, 4));
    EXPECT_EQ(to_decimal(delta(1, 16, 4)), "0.5");
    oracle::Gen gen(43);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + gen.below(4);
        const std::size_t n = gen.below(500);
        const std::size_t ell = 1 + gen.below(40);
        const std::uint64_t m = std::uint64_t{k} << k;
        const long double closed = static_cast<long double>(n / ell) * m * std::pow(1.0L - 1.0L / m, ell);
        EXPECT_NEAR(static_cast<double>(to_double(delta(k, n, ell))), static_cast<double>(closed),
                    1e-9 * std::max(1.0, static_cast<double>(closed)));
    }
    EXPECT_THROW(delta(1, 4, 0), std::invalid_argument);
    EXPECT_THROW(delta(0, 4, 1), std::invalid_argument);
}

TEST(CountingBounds, Substitution) {
    EXPECT_EQ(non_good_sequence_upper(1, 8, 2), Rational(512));
    EXPECT_EQ(non_good_sequence_upper(1, 3, 4), Rational(0));
    EXPECT_EQ(good_graph_lower(1, 8, 4), Rational(24));
    EXPECT_LE(good_graph_lower(1, 8, 2), Rational(0));
    EXPECT_EQ(recovery_multiplier(1), BigInt(8));
    EXPECT_EQ(recovery_multiplier(2), BigInt(2) * BigInt(8) * BigInt(8) * BigInt(8) * BigInt(8) * BigInt(8) *
                                          BigInt(8));
    EXPECT_EQ(*non_good_fraction_upper(1, 8, 4), Rational(8) * Rational(1, 4) / Rational(3, 4));
    EXPECT_FALSE(non_good_fraction_upper(1, 8, 2).has_value());
    EXPECT_EQ(*non_good_fraction_upper(1, 2, 4), Rational(0));
}

TEST(CountingBounds, HoldExhaustivelyForOneColor) {
    for (auto [n, ell] : std::vector<std::pair<std::size_t, std::size_t>>{{6, 2}, {8, 2}, {8, 4}, {10, 5}, {12, 3}}) {
        std::uint64_t bad = 0;
        std::set<Graph> all, good;
        for_each_sequence(1, n, [&](const RainbowSequence& s) {
            const Graph g = seq_to_graph(s);
            all.insert(g);
            if (is_ell_good_seq(s, ell)) {
                good.insert(g);
            } else {
                ++bad;
            }
        });
        EXPECT_LE(Rational(bad), non_good_sequence_upper(1, n, ell));
        EXPECT_LE(Rational(all.size() - good.size()), non_good_sequence_upper(1, n, ell));
        EXPECT_GE(Rational(good.size()), good_graph_lower(1, n, ell));
        if (auto f = non_good_fraction_upper(1, n, ell)) {
            EXPECT_LE(Rational(BigInt(all.size() - good.size()), BigInt(all.size())), *f);
        }
    }
}

TEST(AasHypotheses, ExamplePoints) {
    auto h = aas_hypotheses_ok(1, 384, 8);
    EXPECT_TRUE(h.proposition_ok);
    EXPECT_FALSE(h.floor_ratio_ok);
    EXPECT_FALSE(h.n_threshold_ok);
    h = aas_hypotheses_ok(1, 512, 8);
    EXPECT_TRUE(h.floor_ratio_ok);
    EXPECT_TRUE(h.proposition_ok);
    EXPECT_NEAR(static_cast<double>(aas_hypotheses_ok(1, 1, 1).n_threshold), 2048.0 / 0.19264507794239583, 1e-6);
    EXPECT_NEAR(static_cast<double>(aas_hypotheses_ok(1, 1, 1).n_threshold), 10630.95, 0.01);
    EXPECT_FALSE(aas_hypotheses_ok(1, 10630, 1).n_threshold_ok);
    EXPECT_TRUE(aas_hypotheses_ok(1, 10631, 1).n_threshold_ok);
    EXPECT_FALSE(aas_hypotheses_ok(1, 383, 8).proposition_ok);
    EXPECT_THROW(aas_hypotheses_ok(1, 10, 0), std::invalid_argument);
}

TEST(AasBound, LogForm) {
    for (std::size_t n : {1u, 100u, 1u << 10, 1u << 20}) {
        const long double hand = static_cast<long double>(n) / 64.0L * std::log2(7.0L / 8.0L) + 256.0L;
        EXPECT_NEAR(static_cast<double>(aas_bound(1, n).log2), static_cast<double>(hand), 1e-9);
    }
    long double prev = aas_bound(2, 1).log2;
    for (std::size_t n = 2; n < 5000; n += 37) {
        const long double cur = aas_bound(2, n).log2;
        EXPECT_LT(cur, prev);
        prev = cur;
    }
    // crossing below 1 for k = 1 at 256 * 64 / -log2(7/8)
    const double crossing = 256.0 * 64.0 / -std::log2(7.0 / 8.0);
    EXPECT_NEAR(crossing, 85047.59, 0.01);
    EXPECT_GT(aas_bound(1, 85000).log2, 0.0L);
    EXPECT_LT(aas_bound(1, 85100).log2, 0.0L);
    EXPECT_TRUE(aas_bound(1, 85100).value.has_value());
    EXPECT_FALSE(aas_bound(3, 1).value.has_value());
}

TEST(BoundReport, JsonFields) {
    const auto j = bound_report_to_json(make_bound_report(1, 16, 4));
    EXPECT_EQ(j.at("delta").at("num"), "1");
    EXPECT_EQ(j.at("delta").at("den"), "2");
    EXPECT_EQ(j.at("good_graph_lower_vacuous"), false);
    EXPECT_EQ(j.at("hypotheses_ok").at("floor_ratio_ok"), false);
    const auto v = bound_report_to_json(make_bound_report(1, 8, 2));
    EXPECT_EQ(v.at("good_graph_lower_vacuous"), true);
    EXPECT_TRUE(v.at("non_good_fraction_upper").is_null());
}
