#pragma once

// Exact and Monte Carlo experiments over RainSeq_k(n) and RainGraph_k(n).
//
// Exact-mode fractions count graphs (deduplicated by equality) unless the
// report's population says "sequences". Monte Carlo mode always samples
// sequences uniformly.

#include <boost/math/special_functions/beta.hpp>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "rainbow/canonical.hpp"
#include "rainbow/core.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/goodness.hpp"
#include "rainbow/rational.hpp"
#include "rainbow/recognition.hpp"

namespace rainbow {

// ---------------------------------------------------------------------------
// Sampling

/// Uniform sequences from a seeded mt19937_64 stream. Bounded integers use
/// rejection sampling so the stream is identical across standard libraries.
class SequenceSampler {
public:
    SequenceSampler(std::size_t k, std::uint64_t seed) : k_(k), symbols_(symbol_count(k)), engine_(seed) {
        if (k == 0 || k > 20) throw std::invalid_argument("SequenceSampler: k must be in 1..20");
    }

    RainbowSequence next(std::size_t n) {
        std::vector<ColorSymbol> entries(n);
        for (auto& e : entries) e = ColorSymbol::from_code(bounded(symbols_), k_);
        return RainbowSequence(k_, std::move(entries));
    }

private:
    std::uint64_t bounded(std::uint64_t range) {
        const std::uint64_t threshold = (0 - range) % range;
        while (true) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % range;
        }
    }

    std::size_t k_;
    std::uint64_t symbols_;
    std::mt19937_64 engine_;
};

inline RainbowSequence sample_sequence(std::size_t k, std::size_t n, std::uint64_t seed) {
    return SequenceSampler(k, seed).next(n);
}

// ---------------------------------------------------------------------------
// Reports

enum class Mode { exact, monte_carlo };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "monte-carlo"; }

/// count / population, kept unreduced so the population stays visible.
struct Ratio {
    std::uint64_t count = 0;
    std::uint64_t population = 0;
    Rational value() const { return population == 0 ? Rational(0) : Rational(BigInt(count), BigInt(population)); }
};

/// Point estimate with an exact Clopper-Pearson interval.
struct Estimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double confidence = 0.95;
};

inline Estimate clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence = 0.95) {
    if (trials == 0) throw std::invalid_argument("clopper_pearson: no trials");
    Estimate e;
    e.successes = successes;
    e.trials = trials;
    e.confidence = confidence;
    const double alpha = 1.0 - confidence;
    const double x = static_cast<double>(successes);
    const double nt = static_cast<double>(trials);
    e.point = x / nt;
    e.lower = successes == 0 ? 0.0 : boost::math::ibeta_inv(x, nt - x + 1.0, alpha / 2.0);
    e.upper = successes == trials ? 1.0 : boost::math::ibeta_inv(x + 1.0, nt - x, 1.0 - alpha / 2.0);
    return e;
}

struct ExperimentParams {
    std::string experiment;
    std::size_t k = 1;
    std::size_t n = 0;
    std::optional<std::size_t> ell;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    Mode mode = Mode::exact;
};

struct ExperimentReport {
    ExperimentParams params;
    std::string population;  ///< "graphs" or "sequences"
    std::vector<std::pair<std::string, std::uint64_t>> counts;
    std::vector<std::pair<std::string, Ratio>> fractions;
    std::vector<std::pair<std::string, Rational>> bounds;
    std::vector<std::pair<std::string, bool>> checks;
    std::optional<Estimate> estimate;
    std::vector<std::string> notes;
    double wall_time_ms = 0.0;

    std::uint64_t count(const std::string& name) const { return lookup(counts, name); }
    const Ratio& fraction(const std::string& name) const { return lookup(fractions, name); }
    const Rational& bound(const std::string& name) const { return lookup(bounds, name); }
    bool check(const std::string& name) const { return lookup(checks, name); }
    bool has_bound(const std::string& name) const {
        for (const auto& [key, value] : bounds)
            if (key == name) return true;
        return false;
    }

    /// True when every recorded check holds.
    bool all_checks_pass() const {
        for (const auto& [name, ok] : checks)
            if (!ok) return false;
        return true;
    }

private:
    template <typename T>
    static const T& lookup(const std::vector<std::pair<std::string, T>>& items, const std::string& name) {
        for (const auto& [key, value] : items)
            if (key == name) return value;
        throw std::out_of_range("ExperimentReport: no entry named " + name);
    }
};

namespace detail {

class Stopwatch {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline ExperimentReport start_report(std::string name, std::size_t k, std::size_t n, Mode mode) {
    ExperimentReport r;
    r.params.experiment = std::move(name);
    r.params.k = k;
    r.params.n = n;
    r.params.mode = mode;
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Experiments

/// Monte Carlo probability that a uniform sequence is not ell-good.
inline ExperimentReport estimate_nongood_fraction(std::size_t k, std::size_t n, std::size_t ell, std::uint64_t trials,
                                                  std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("estimate_nongood_fraction: trials must be positive");
    detail::Stopwatch clock;
    auto r = detail::start_report("nongood_fraction", k, n, Mode::monte_carlo);
    r.params.ell = ell;
    r.params.trials = trials;
    r.params.seed = seed;
    r.population = "sequences";
    SequenceSampler sampler(k, seed);
    std::uint64_t bad = 0;
    for (std::uint64_t t = 0; t < trials; ++t)
        if (!is_ell_good_seq(sampler.next(n), ell)) ++bad;
    r.counts.emplace_back("trials", trials);
    r.counts.emplace_back("non_good", bad);
    r.estimate = clopper_pearson(bad, trials);
    const Rational d = delta(k, n, ell);
    r.bounds.emplace_back("delta", d);
    r.checks.emplace_back("lower_ci_within_delta", Rational(r.estimate->lower) <= d);
    r.wall_time_ms = clock.elapsed_ms();
    return r;
}

/// Exact fraction of RainSeq_k(n) that is not ell-good.
inline ExperimentReport exact_nongood_fraction(std::size_t k, std::size_t n, std::size_t ell, const Budget& budget = {}) {
    detail::Stopwatch clock;
    auto r = detail::start_report("nongood_fraction", k, n, Mode::exact);
    r.params.ell = ell;
    r.population = "sequences";
    const std::uint64_t total = detail::require_enumerable(k, n, budget, "exact_nongood_fraction");
    std::uint64_t bad = 0;
    for_each_sequence(k, n, [&](const RainbowSequence& s) {
        if (!is_ell_good_seq(s, ell)) ++bad;
    }, budget);
    r.counts.emplace_back("sequences", total);
    r.counts.emplace_back("non_good", bad);
    r.fractions.emplace_back("non_good", Ratio{bad, total});
    const Rational d = delta(k, n, ell);
    r.bounds.emplace_back("delta", d);
    r.checks.emplace_back("fraction_within_delta", Ratio{bad, total}.value() <= d);
    r.wall_time_ms = clock.elapsed_ms();
    return r;
}

/// Exact counts behind the ell-goodness counting bounds: non-good sequences,
/// ell-good graphs, and the non-good graph fraction, each against its bound.
inline ExperimentReport goodness_counts(std::size_t k, std::size_t n, std::size_t ell, const Budget& budget = {}) {
    detail::Stopwatch clock;
    auto r = detail::start_report("goodness_counts", k, n, Mode::exact);
    r.params.ell = ell;
    r.population = "graphs";
    const std::uint64_t total = detail::require_enumerable(k, n, budget, "goodness_counts");
    std::uint64_t bad_sequences = 0;
    std::unordered_set<Graph, GraphHash> all_graphs, good_graphs;
    for_each_sequence(k, n, [&](const RainbowSequence& s) {
        Graph g = seq_to_graph(s);
        if (is_ell_good_seq(s, ell)) {
            good_graphs.insert(g);
        } else {
            ++bad_sequences;
        }
        all_graphs.insert(std::move(g));
    }, budget);
    const std::uint64_t graphs = all_graphs.size();
    const std::uint64_t good = good_graphs.size();
    r.counts.emplace_back("sequences", total);
    r.counts.emplace_back("non_good_sequences", bad_sequences);
    r.counts.emplace_back("graphs", graphs);
    r.counts.emplace_back("good_graphs", good);
    r.counts.emplace_back("non_good_graphs", graphs - good);
    r.fractions.emplace_back("non_good_sequences", Ratio{bad_sequences, total});
    r.fractions.emplace_back("non_good_graphs", Ratio{graphs - good, graphs});

    const Rational d = delta(k, n, ell);
    const Rational upper = non_good_sequence_upper(k, n, ell);
    const Rational lower = good_graph_lower(k, n, ell);
    r.bounds.emplace_back("delta", d);
    r.bounds.emplace_back("non_good_seq_upper", upper);
    r.bounds.emplace_back("good_graph_lower", lower);
    r.checks.emplace_back("lemma_a_sequences", Rational(bad_sequences) <= upper);
    r.checks.emplace_back("lemma_a_graphs", Rational(graphs - good) <= upper);
    r.checks.emplace_back("lemma_b", Rational(good) >= lower);
    if (auto frac = non_good_fraction_upper(k, n, ell)) {
        r.bounds.emplace_back("non_good_fraction_upper", *frac);
        r.checks.emplace_back("corollary", Ratio{graphs - good, graphs}.value() <= *frac);
    } else {
        r.notes.push_back("delta >= 1: good_graph_lower and the fraction bound are vacuous");
    }
    r.wall_time_ms = clock.elapsed_ms();
    return r;
}

/// Fraction of RainGraph_k(n) isomorphic to some member of RainGraph_{k-1}(n).
/// RainGraph_0(n) is empty for n >= 1.
inline ExperimentReport exact_class_fractions(std::size_t k, std::size_t n, const Budget& budget = {}) {
    if (k == 0) throw std::invalid_argument("exact_class_fractions: k must be positive");
    detail::Stopwatch clock;
    auto r = detail::start_report("class_fractions", k, n, Mode::exact);
    r.population = "graphs";
    const auto graphs = enumerate_graphs(k, n, budget);
    std::uint64_t iso = 0;
    if (k == 1) {
        iso = n == 0 ? graphs.size() : 0;
        r.notes.push_back("the 0-color class is empty on nonempty vertex sets");
    } else {
        // Degree multisets prefilter; canonical forms decide.
        std::map<std::vector<std::size_t>, std::set<std::string>> lower;
        for (const auto& h : enumerate_graphs(k - 1, n, budget))
            lower[h.degree_sequence_sorted()].insert(canonical_form(h, budget));
        for (const auto& g : graphs) {
            auto it = lower.find(g.degree_sequence_sorted());
            if (it != lower.end() && it->second.count(canonical_form(g, budget))) ++iso;
        }
        std::uint64_t lower_classes = 0;
        for (const auto& [deg, forms] : lower) lower_classes += forms.size();
        r.counts.emplace_back("lower_iso_classes", lower_classes);
    }
    r.counts.emplace_back("graphs", graphs.size());
    r.counts.emplace_back("isomorphic_to_lower", iso);
    r.fractions.emplace_back("isomorphic_to_lower", Ratio{iso, graphs.size()});
    r.wall_time_ms = clock.elapsed_ms();
    return r;
}

/// Fractions of RainGraph_k(n) with an isolated vertex (phi) and with a
/// dominating vertex (psi), against the constant 1/(k! (k 2^k)^{k+2^k}).
inline ExperimentReport zero_one_fractions(std::size_t k, std::size_t n, const Budget& budget = {}) {
    detail::Stopwatch clock;
    auto r = detail::start_report("zero_one", k, n, Mode::exact);
    r.population = "graphs";
    const auto graphs = enumerate_graphs(k, n, budget);
    std::uint64_t phi = 0, psi = 0, both = 0;
    for (const auto& g : graphs) {
        bool isolated = false, dominating = false;
        for (Vertex v = 0; v < g.order(); ++v) {
            const std::size_t d = g.degree(v);
            if (d == 0) isolated = true;
            if (d + 1 == g.order()) dominating = true;
        }
        phi += isolated;
        psi += dominating;
        both += isolated && dominating;
    }
    const std::uint64_t total = graphs.size();
    r.counts.emplace_back("graphs", total);
    r.counts.emplace_back("phi", phi);
    r.counts.emplace_back("psi", psi);
    r.counts.emplace_back("phi_and_psi", both);
    r.fractions.emplace_back("phi", Ratio{phi, total});
    r.fractions.emplace_back("psi", Ratio{psi, total});
    r.fractions.emplace_back("phi_and_psi", Ratio{both, total});
    const Rational constant = Rational(BigInt(1), recovery_multiplier(k));
    r.bounds.emplace_back("lower_constant", constant);
    r.checks.emplace_back("phi_positive", phi > 0);
    r.checks.emplace_back("psi_positive", psi > 0);
    r.checks.emplace_back("phi_at_least_constant", Ratio{phi, total}.value() >= constant);
    r.checks.emplace_back("psi_at_least_constant", Ratio{psi, total}.value() >= constant);
    if (n >= 2) r.checks.emplace_back("phi_and_psi_exclusive", both == 0);
    r.wall_time_ms = clock.elapsed_ms();
    return r;
}

/// Fixes all colors on [k] and every color set on [n - 2^k, n), varies the
/// middle, and counts distinct graphs against (k 2^k)^{n-k-2^k} / k!.
/// A mismatch is reported through the "matches_formula" flag and a note,
/// not treated as a failure.
inline ExperimentReport extension_image_count(std::size_t k, std::size_t n, const Budget& budget = {}) {
    if (k == 0 || k > 5) throw std::invalid_argument("extension_image_count: k must be in 1..5");
    const std::size_t fixed_suffix = std::size_t{1} << k;
    if (n < k + fixed_suffix) throw std::invalid_argument("extension_image_count: need n >= k + 2^k");
    detail::Stopwatch clock;
    auto r = detail::start_report("extension_image", k, n, Mode::exact);
    r.population = "graphs";
    const std::size_t free = n - k - fixed_suffix;
    const std::uint64_t extensions = detail::require_enumerable(k, free, budget, "extension_image_count");

    std::vector<ColorSymbol> entries(n);
    for (std::size_t i = 0; i < k; ++i) entries[i] = {static_cast<Color>(i), 0};
    for (std::size_t s = 0; s < fixed_suffix; ++s) entries[n - fixed_suffix + s] = {0, static_cast<ColorMask>(s)};

    std::unordered_set<Graph, GraphHash> images;
    detail::for_each_entries(k, free, [&](std::span<const ColorSymbol> middle) {
        std::copy(middle.begin(), middle.end(), entries.begin() + static_cast<std::ptrdiff_t>(k));
        images.insert(seq_to_graph(RainbowSequence(k, entries)));
    });

    const Rational formula = Rational(big_pow(BigInt(symbol_count(k)), free), factorial(k));
    r.counts.emplace_back("extensions", extensions);
    r.counts.emplace_back("distinct_graphs", images.size());
    r.bounds.emplace_back("formula", formula);
    const bool matches = Rational(images.size()) == formula;
    r.checks.emplace_back("matches_formula", matches);
    if (!matches) {
        r.notes.push_back("discrepancy: " + std::to_string(images.size()) + " distinct graphs vs formula " +
                          rational_string(formula) +
                          "; with the fixed prefix and suffix every extension yields a different graph, so the "
                          "image has no k! symmetry to quotient by");
    }
    r.wall_time_ms = clock.elapsed_ms();
    return r;
}

// ---------------------------------------------------------------------------
// Config-driven runs

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"nongood_fraction", "goodness_counts", "class_fractions", "zero_one",
                                                "extension_image"};
    return names;
}

inline ExperimentParams parse_experiment_params(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("experiment entry must be an object");
    ExperimentParams p;
    try {
        p.experiment = j.at("experiment").get<std::string>();
        p.k = j.at("k").get<std::size_t>();
        p.n = j.at("n").get<std::size_t>();
        if (j.contains("ell")) p.ell = j.at("ell").get<std::size_t>();
        if (j.contains("trials")) p.trials = j.at("trials").get<std::uint64_t>();
        if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("mode")) {
            const auto mode = j.at("mode").get<std::string>();
            if (mode == "exact") {
                p.mode = Mode::exact;
            } else if (mode == "monte-carlo" || mode == "mc") {
                p.mode = Mode::monte_carlo;
            } else {
                throw std::invalid_argument("unknown mode '" + mode + "'");
            }
        } else if (p.trials) {
            p.mode = Mode::monte_carlo;
        }
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument(std::string("invalid experiment entry: ") + ex.what());
    }
    if (std::find(experiment_names().begin(), experiment_names().end(), p.experiment) == experiment_names().end()) {
        throw std::invalid_argument("unknown experiment '" + p.experiment + "'");
    }
    return p;
}

/// Accepts a single entry, an array of entries, or {"experiments": [...]}.
inline std::vector<ExperimentParams> parse_experiment_config(const nlohmann::json& config) {
    const nlohmann::json* list = &config;
    nlohmann::json wrapped;
    if (config.is_object() && config.contains("experiments")) {
        list = &config.at("experiments");
    } else if (config.is_object()) {
        wrapped = nlohmann::json::array({config});
        list = &wrapped;
    }
    if (!list->is_array()) throw std::invalid_argument("experiment config must be an array of entries");
    std::vector<ExperimentParams> out;
    for (const auto& entry : *list) out.push_back(parse_experiment_params(entry));
    return out;
}

inline ExperimentReport run_experiment(const ExperimentParams& p, const Budget& budget = {}) {
    auto need_ell = [&]() {
        if (!p.ell || *p.ell == 0) throw std::invalid_argument(p.experiment + " requires a positive ell");
        return *p.ell;
    };
    if (p.experiment == "nongood_fraction") {
        if (p.mode == Mode::monte_carlo) {
            return estimate_nongood_fraction(p.k, p.n, need_ell(), p.trials.value_or(10000), p.seed.value_or(1));
        }
        return exact_nongood_fraction(p.k, p.n, need_ell(), budget);
    }
    if (p.experiment == "goodness_counts") return goodness_counts(p.k, p.n, need_ell(), budget);
    if (p.experiment == "class_fractions") return exact_class_fractions(p.k, p.n, budget);
    if (p.experiment == "zero_one") return zero_one_fractions(p.k, p.n, budget);
    if (p.experiment == "extension_image") return extension_image_count(p.k, p.n, budget);
    throw std::invalid_argument("unknown experiment '" + p.experiment + "'");
}

inline std::vector<ExperimentReport> run_report(const nlohmann::json& config, const Budget& budget = {}) {
    std::vector<ExperimentReport> out;
    for (const auto& p : parse_experiment_config(config)) out.push_back(run_experiment(p, budget));
    return out;
}

/// Wall time is left out unless requested so that fixed-seed runs serialize
/// to identical bytes.
inline nlohmann::ordered_json report_to_json(const ExperimentReport& r, bool include_timing = false) {
    nlohmann::ordered_json j;
    j["experiment"] = r.params.experiment;
    j["mode"] = to_string(r.params.mode);
    nlohmann::ordered_json params;
    params["k"] = r.params.k;
    params["n"] = r.params.n;
    params["ell"] = r.params.ell ? nlohmann::ordered_json(*r.params.ell) : nlohmann::ordered_json(nullptr);
    params["trials"] = r.params.trials ? nlohmann::ordered_json(*r.params.trials) : nlohmann::ordered_json(nullptr);
    params["seed"] = r.params.seed ? nlohmann::ordered_json(*r.params.seed) : nlohmann::ordered_json(nullptr);
    j["params"] = std::move(params);
    j["population"] = r.population;
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [name, value] : r.counts) counts[name] = value;
    j["counts"] = std::move(counts);
    nlohmann::ordered_json fractions = nlohmann::ordered_json::object();
    for (const auto& [name, ratio] : r.fractions) {
        nlohmann::ordered_json f = rational_json(ratio.value());
        f["count"] = ratio.count;
        f["population"] = ratio.population;
        fractions[name] = std::move(f);
    }
    j["fractions"] = std::move(fractions);
    nlohmann::ordered_json bounds = nlohmann::ordered_json::object();
    for (const auto& [name, value] : r.bounds) bounds[name] = rational_json(value);
    j["bounds"] = std::move(bounds);
    nlohmann::ordered_json checks = nlohmann::ordered_json::object();
    for (const auto& [name, ok] : r.checks) checks[name] = ok;
    j["checks"] = std::move(checks);
    if (r.estimate) {
        nlohmann::ordered_json e;
        e["successes"] = r.estimate->successes;
        e["trials"] = r.estimate->trials;
        e["point"] = r.estimate->point;
        e["ci_low"] = r.estimate->lower;
        e["ci_high"] = r.estimate->upper;
        e["confidence"] = r.estimate->confidence;
        j["estimate"] = std::move(e);
    } else {
        j["estimate"] = nullptr;
    }
    j["notes"] = r.notes;
    if (include_timing) j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

inline nlohmann::ordered_json reports_to_json(const std::vector<ExperimentReport>& reports, bool include_timing = false) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& r : reports) j.push_back(report_to_json(r, include_timing));
    return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

template <typename T>
std::string optional_field(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string();
}

}  // namespace detail

/// One row per report; counts, fractions, bounds and checks are packed as
/// semicolon-separated name=value lists.
inline std::string reports_to_csv(const std::vector<ExperimentReport>& reports) {
    std::ostringstream os;
    os << "experiment,mode,k,n,ell,trials,seed,population,counts,fractions,bounds,checks,estimate\n";
    for (const auto& r : reports) {
        std::string counts, fractions, bounds, checks, estimate;
        for (const auto& [name, v] : r.counts) counts += (counts.empty() ? "" : ";") + name + "=" + std::to_string(v);
        for (const auto& [name, v] : r.fractions)
            fractions += (fractions.empty() ? "" : ";") + name + "=" + std::to_string(v.count) + "/" +
                         std::to_string(v.population);
        for (const auto& [name, v] : r.bounds) bounds += (bounds.empty() ? "" : ";") + name + "=" + to_decimal(v, 12);
        for (const auto& [name, v] : r.checks) checks += (checks.empty() ? "" : ";") + name + "=" + (v ? "true" : "false");
        if (r.estimate) {
            std::ostringstream e;
            e.precision(12);
            e << r.estimate->point << ";" << r.estimate->lower << ";" << r.estimate->upper;
            estimate = e.str();
        }
        os << detail::csv_field(r.params.experiment) << ',' << to_string(r.params.mode) << ',' << r.params.k << ','
           << r.params.n << ',' << detail::optional_field(r.params.ell) << ','
           << detail::optional_field(r.params.trials) << ',' << detail::optional_field(r.params.seed) << ','
           << r.population << ',' << detail::csv_field(counts) << ',' << detail::csv_field(fractions) << ','
           << detail::csv_field(bounds) << ',' << detail::csv_field(checks) << ',' << detail::csv_field(estimate)
           << '\n';
    }
    return os.str();
}

}  // namespace rainbow
