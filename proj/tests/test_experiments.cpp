#include <gtest/gtest.h>

#include <cmath>

#include "support/oracles.hpp"

using namespace rainbow;

TEST(Sampling, Deterministic) {
    EXPECT_EQ(sample_sequence(2, 50, 99), sample_sequence(2, 50, 99));
    EXPECT_NE(sample_sequence(2, 50, 99), sample_sequence(2, 50, 100));
    EXPECT_EQ(sample_sequence(3, 0, 1).size(), 0u);
    // the stream is pinned to mt19937_64 and rejection sampling
    std::mt19937_64 ref(5);
    const auto s = sample_sequence(2, 4, 5);
    const std::uint64_t threshold = (0 - std::uint64_t{8}) % 8;
    for (std::size_t i = 0; i < 4; ++i) {
        std::uint64_t r;
        do r = ref();
        while (r < threshold);
        EXPECT_EQ(s[i].code(2), r % 8);
    }
}

TEST(Sampling, UniformSymbols) {
    SequenceSampler sampler(2, 2024);
    std::vector<double> counts(8, 0.0);
    const int draws = 100000;
    for (int d = 0; d < draws; ++d) counts[sampler.next(1)[0].code(2)] += 1.0;
    double chi2 = 0.0;
    const double expected = draws / 8.0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 7 degrees of freedom; 24.3 is the 0.999 quantile
    EXPECT_LT(chi2, 24.3);
    for (double c : counts) EXPECT_NEAR(c, expected, 3.0 * std::sqrt(expected * 7.0 / 8.0) + 1.0);
}

TEST(ClopperPearson, KnownValues) {
    const auto e = clopper_pearson(5, 10);
    EXPECT_NEAR(e.lower, 0.18708, 1e-4);
    EXPECT_NEAR(e.upper, 0.81292, 1e-4);
    EXPECT_EQ(clopper_pearson(0, 20).lower, 0.0);
    EXPECT_NEAR(clopper_pearson(0, 20).upper, 0.16843, 1e-4);
    EXPECT_EQ(clopper_pearson(20, 20).upper, 1.0);
    EXPECT_THROW(clopper_pearson(0, 0), std::invalid_argument);
}

TEST(NongoodFraction, VacuousWindows) {
    const auto r = estimate_nongood_fraction(2, 10, 4, 500, 3);
    EXPECT_EQ(r.count("non_good"), 0u);
    EXPECT_EQ(r.estimate->point, 0.0);
}

TEST(NongoodFraction, BelowDelta) {
    const auto r = estimate_nongood_fraction(1, 16, 4, 20000, 11);
    const double p = r.estimate->point;
    const double stderr_ = std::sqrt(p * (1 - p) / 20000.0);
    EXPECT_LE(p, 0.5 + 3 * stderr_);
    EXPECT_LE(r.estimate->lower, p);
    EXPECT_GE(r.estimate->upper, p);
    EXPECT_TRUE(r.all_checks_pass());
}

TEST(NongoodFraction, MonteCarloMatchesExact) {
    const auto exact = exact_nongood_fraction(1, 8, 2);
    EXPECT_EQ(exact.fraction("non_good").population, 256u);
    std::uint64_t bad = 0;
    for_each_sequence(1, 8, [&](const RainbowSequence& s) { bad += !oracle::ell_good_by_definition(s, 2); });
    EXPECT_EQ(exact.count("non_good"), bad);
    const auto mc = estimate_nongood_fraction(1, 8, 2, 20000, 8);
    const double truth = to_double(exact.fraction("non_good").value());
    EXPECT_LE(mc.estimate->lower, truth);
    EXPECT_GE(mc.estimate->upper, truth);
}

TEST(NongoodFraction, IntervalShrinksWithTrials) {
    const auto small = estimate_nongood_fraction(1, 16, 4, 4000, 21);
    const auto large = estimate_nongood_fraction(1, 16, 4, 16000, 21);
    const double ws = small.estimate->upper - small.estimate->lower;
    const double wl = large.estimate->upper - large.estimate->lower;
    EXPECT_NEAR(wl / ws, 0.5, 0.1);
}

TEST(GoodnessCounts, BoundsHold) {
    for (auto [n, ell] : std::vector<std::pair<std::size_t, std::size_t>>{{6, 2}, {8, 2}, {8, 4}, {10, 5}}) {
        const auto r = goodness_counts(1, n, ell);
        EXPECT_TRUE(r.all_checks_pass()) << n << "," << ell;
        EXPECT_EQ(r.count("graphs"), std::uint64_t{1} << (n - 1));
        EXPECT_EQ(r.fraction("non_good_graphs").population, r.count("graphs"));
    }
    const auto r = goodness_counts(1, 8, 2);
    EXPECT_FALSE(r.has_bound("non_good_fraction_upper"));
    EXPECT_EQ(r.bound("non_good_seq_upper"), Rational(512));
}

TEST(ClassFractions, SmallCases) {
    const auto r3 = exact_class_fractions(2, 3);
    EXPECT_EQ(r3.fraction("isomorphic_to_lower").value(), Rational(1));
    const auto r4 = exact_class_fractions(2, 4);
    EXPECT_LT(r4.fraction("isomorphic_to_lower").value(), Rational(1));
    EXPECT_EQ(r4.fraction("isomorphic_to_lower").population, enumerate_graphs(2, 4).size());
    // oracle: brute-force isomorphism into the threshold class
    const auto threshold = enumerate_graphs(1, 4);
    std::uint64_t iso = 0;
    for (const Graph& g : enumerate_graphs(2, 4)) {
        for (const Graph& h : threshold)
            if (oracle::brute_isomorphic(g, h)) {
                ++iso;
                break;
            }
    }
    EXPECT_EQ(r4.count("isomorphic_to_lower"), iso);
    EXPECT_EQ(exact_class_fractions(1, 5).fraction("isomorphic_to_lower").value(), Rational(0));
    EXPECT_EQ(exact_class_fractions(1, 0).fraction("isomorphic_to_lower").value(), Rational(1));
    EXPECT_THROW(exact_class_fractions(0, 3), std::invalid_argument);
}

TEST(ZeroOne, OneColorIsHalfHalf) {
    for (std::size_t n = 2; n <= 10; ++n) {
        const auto r = zero_one_fractions(1, n);
        EXPECT_EQ(r.fraction("phi").value(), Rational(1, 2));
        EXPECT_EQ(r.fraction("psi").value(), Rational(1, 2));
        EXPECT_EQ(r.count("phi_and_psi"), 0u);
    }
    const auto one = zero_one_fractions(1, 1);
    EXPECT_EQ(one.fraction("phi").value(), Rational(1));
    EXPECT_EQ(one.fraction("psi").value(), Rational(1));
    EXPECT_EQ(zero_one_fractions(1, 4).bound("lower_constant"), Rational(1, 8));
}

TEST(ZeroOne, TwoColors) {
    for (std::size_t n = 2; n <= 5; ++n) {
        const auto r = zero_one_fractions(2, n);
        EXPECT_TRUE(r.all_checks_pass());
        EXPECT_LE(r.fraction("phi").value() + r.fraction("psi").value(), Rational(1));
        std::uint64_t phi = 0;
        for (const Graph& g : enumerate_graphs(2, n)) {
            bool isolated = false;
            for (Vertex v = 0; v < n; ++v) isolated = isolated || g.degree(v) == 0;
            phi += isolated;
        }
        EXPECT_EQ(r.count("phi"), phi);
    }
}

TEST(ExtensionImage, Counts) {
    EXPECT_EQ(extension_image_count(1, 4).count("distinct_graphs"), 2u);
    EXPECT_EQ(extension_image_count(1, 5).count("distinct_graphs"), 4u);
    EXPECT_EQ(extension_image_count(1, 6).count("distinct_graphs"), 8u);
    EXPECT_TRUE(extension_image_count(1, 6).check("matches_formula"));
    const auto r = extension_image_count(2, 7);
    EXPECT_EQ(r.count("extensions"), 8u);
    EXPECT_EQ(r.bound("formula"), Rational(4));
    EXPECT_EQ(r.count("distinct_graphs"), 8u);
    EXPECT_FALSE(r.check("matches_formula"));
    ASSERT_FALSE(r.notes.empty());
    EXPECT_NE(r.notes[0].find("discrepancy"), std::string::npos);
    EXPECT_THROW(extension_image_count(2, 5), std::invalid_argument);
}

TEST(RunReport, ConfigShapes) {
    EXPECT_TRUE(run_report(nlohmann::json::array()).empty());
    EXPECT_TRUE(run_report(nlohmann::json::parse(R"({"experiments": []})")).empty());
    const auto one = run_report(nlohmann::json::parse(R"({"experiment":"zero_one","k":1,"n":6})"));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].fraction("phi").value(), Rational(1, 2));
    EXPECT_THROW(run_report(nlohmann::json::parse(R"([{"experiment":"nope","k":1,"n":3}])")), std::invalid_argument);
    EXPECT_THROW(run_report(nlohmann::json::parse(R"([{"experiment":"zero_one","n":3}])")), std::invalid_argument);
    EXPECT_THROW(run_report(nlohmann::json::parse(R"([{"experiment":"goodness_counts","k":1,"n":3}])")),
                 std::invalid_argument);
    EXPECT_THROW(run_report(nlohmann::json::parse("3")), std::invalid_argument);
}

TEST(RunReport, DeterministicBytes) {
    const auto config = nlohmann::json::parse(R"([
        {"experiment":"nongood_fraction","k":1,"n":16,"ell":4,"trials":3000,"seed":5},
        {"experiment":"zero_one","k":2,"n":4},
        {"experiment":"extension_image","k":1,"n":5}
    ])");
    const std::string a = reports_to_json(run_report(config)).dump(2);
    const std::string b = reports_to_json(run_report(config)).dump(2);
    EXPECT_EQ(a, b);
    EXPECT_EQ(reports_to_csv(run_report(config)), reports_to_csv(run_report(config)));
    EXPECT_EQ(a.find("wall_time_ms"), std::string::npos);
    EXPECT_NE(reports_to_json(run_report(config), true).dump().find("wall_time_ms"), std::string::npos);
}

TEST(RunReport, JsonShape) {
    const auto reports = run_report(nlohmann::json::parse(R"([{"experiment":"zero_one","k":1,"n":6}])"));
    const auto j = reports_to_json(reports)[0];
    EXPECT_EQ(j.at("experiment"), "zero_one");
    EXPECT_EQ(j.at("mode"), "exact");
    EXPECT_EQ(j.at("fractions").at("phi").at("num"), "1");
    EXPECT_EQ(j.at("fractions").at("phi").at("den"), "2");
    EXPECT_EQ(j.at("fractions").at("phi").at("population"), 32);
    EXPECT_EQ(j.at("params").at("n"), 6);
    const std::string csv = reports_to_csv(reports);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}
