#pragma once

// Command-line front end. Reports go to `out`, diagnostics to `err`.
//
// Exit codes:
//   0  success / member / certified
//   1  non-member / not certified
//   2  parse error or invalid arguments
//   3  budget exceeded

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/canonical.hpp"
#include "rainbow/conflict.hpp"
#include "rainbow/core.hpp"
#include "rainbow/equivalence.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/experiments.hpp"
#include "rainbow/formats.hpp"
#include "rainbow/goodness.hpp"
#include "rainbow/recognition.hpp"

namespace rainbow {

enum ExitCode : int { kExitOk = 0, kExitNo = 1, kExitInvalid = 2, kExitBudget = 3 };

struct CliConfig {
    std::string subcommand;
    std::string input;
    std::string output;
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t ell = 0;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::string format = "text";
    bool up_to_iso = false;
    bool list = false;
    bool cycle = false;
    bool timing = false;
    std::string x_list;
    std::optional<std::string> a_list;
    Budget budget;
};

namespace detail {

inline VertexSet parse_vertex_list(const std::string& text) {
    VertexSet out;
    if (text.empty() || text == "-") return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("invalid vertex list '" + text + "'");
        }
        out.push_back(std::stoull(item));
    }
    return out;
}

inline nlohmann::ordered_json vertex_json(const VertexSet& vs) {
    auto j = nlohmann::ordered_json::array();
    for (Vertex v : vs) j.push_back(v);
    return j;
}

inline void emit(std::ostream& out, const CliConfig& cfg, const std::string& payload) {
    if (cfg.output.empty()) {
        out << payload;
    } else {
        write_text_file(cfg.output, payload);
    }
}

inline void emit_json(std::ostream& out, const CliConfig& cfg, const nlohmann::ordered_json& j) {
    emit(out, cfg, j.dump(2) + "\n");
}

inline RainbowSequence load_sequence(const CliConfig& cfg) { return parse_sequence(read_text_file(cfg.input)); }
inline Graph load_graph(const CliConfig& cfg) { return parse_graph(read_text_file(cfg.input)); }

inline bool is_sequence_text(const std::string& text) {
    if (looks_like_json(text)) {
        auto j = nlohmann::json::parse(text, nullptr, false);
        return !j.is_discarded() && j.is_object() && j.value("format", "") == "RTS";
    }
    return text.rfind("RTS", 0) == 0;
}

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_build(const CliConfig& cfg, std::ostream& out) {
    const Graph g = seq_to_graph(load_sequence(cfg));
    if (cfg.format == "json") {
        emit_json(out, cfg, graph_to_json(g));
    } else {
        emit(out, cfg, write_rtg(g));
    }
    return kExitOk;
}

inline int cmd_graph_info(const CliConfig& cfg, std::ostream& out) {
    const Graph g = load_graph(cfg);
    nlohmann::ordered_json j;
    j["n"] = g.order();
    j["edges"] = g.edge_count();
    auto degrees = nlohmann::ordered_json::array();
    for (Vertex v = 0; v < g.order(); ++v) degrees.push_back(g.degree(v));
    j["degrees"] = std::move(degrees);
    const Graph conflicts = conflict_graph(g).graph();
    auto conflict_edges = nlohmann::ordered_json::array();
    for (const auto& [u, v] : conflicts.edges()) conflict_edges.push_back({u, v});
    j["conflict_edges"] = std::move(conflict_edges);
    j["min_ordered_index"] = min_ordered_rainbow_index(g, cfg.budget).index;
    j["canonical_form"] = to_hex(canonical_form(g, cfg.budget));
    emit_json(out, cfg, j);
    return kExitOk;
}

inline int cmd_enum(const CliConfig& cfg, std::ostream& out) {
    const std::uint64_t sequences = detail::require_enumerable(cfg.k, cfg.n, cfg.budget, "enum");
    const auto graphs = enumerate_graphs(cfg.k, cfg.n, cfg.budget);
    nlohmann::ordered_json j;
    j["k"] = cfg.k;
    j["n"] = cfg.n;
    j["sequences"] = sequences;
    j["graphs"] = graphs.size();
    if (cfg.list) {
        auto list = nlohmann::ordered_json::array();
        for (const auto& g : graphs) list.push_back(graph_to_json(g)["rows"]);
        j["graph_rows"] = std::move(list);
    }
    emit_json(out, cfg, j);
    return kExitOk;
}

inline int cmd_recognize(const CliConfig& cfg, std::ostream& out) {
    const Graph g = load_graph(cfg);
    nlohmann::ordered_json j;
    j["k"] = cfg.k;
    j["up_to_iso"] = cfg.up_to_iso;
    bool member = false;
    if (cfg.up_to_iso) {
        if (auto w = find_rainbow_ordering(g, cfg.k, cfg.budget)) {
            member = true;
            j["member"] = true;
            j["ordering"] = vertex_json(w->position);
            j["relabeled"] = write_rtg(w->relabeled);
            j["witness"] = write_rts(canonicalize_sequence(w->sequence));
        } else {
            j["member"] = false;
        }
    } else if (auto w = is_ordered_k_rainbow(g, cfg.k, cfg.budget)) {
        member = true;
        j["member"] = true;
        j["witness"] = write_rts(canonicalize_sequence(*w));
        j["min_index"] = min_ordered_rainbow_index(g, cfg.budget).index;
    } else {
        j["member"] = false;
        j["min_index"] = min_ordered_rainbow_index(g, cfg.budget).index;
    }
    emit_json(out, cfg, j);
    return member ? kExitOk : kExitNo;
}

inline int cmd_min_index(const CliConfig& cfg, std::ostream& out) {
    const Graph g = load_graph(cfg);
    const auto r = min_ordered_rainbow_index(g, cfg.budget);
    nlohmann::ordered_json j;
    j["min_index"] = r.index;
    j["witness"] = write_rts(canonicalize_sequence(r.witness));
    emit_json(out, cfg, j);
    return kExitOk;
}

inline int cmd_neighborhood(const CliConfig& cfg, std::ostream& out) {
    const std::string text = read_text_file(cfg.input);
    const Graph g = is_sequence_text(text) ? seq_to_graph(parse_sequence(text)) : parse_graph(text);
    const VertexSet x = parse_vertex_list(cfg.x_list);
    const VertexSet a = cfg.a_list ? parse_vertex_list(*cfg.a_list) : all_vertices(g.order());
    const Partition p = neighborhood_partition(g, a, x);
    nlohmann::ordered_json j;
    j["x"] = vertex_json(x);
    j["domain"] = vertex_json(p.domain());
    j["classes"] = count_classes(p);
    j["partition"] = partition_to_json(p);
    const std::size_t outside = count_outside_classes(g, x);
    j["outside_classes"] = outside;
    if (cfg.k > 0) {
        j["bound"] = rational_json(class_bound(cfg.k, x.size()));
        j["certified_not_k_rainbow"] = certify_not_k_rainbow(g, x, cfg.k);
    }
    emit_json(out, cfg, j);
    return kExitOk;
}

inline int cmd_good(const CliConfig& cfg, std::ostream& out) {
    if (cfg.ell == 0) throw std::invalid_argument("--ell must be positive");
    const std::string text = read_text_file(cfg.input);
    nlohmann::ordered_json j;
    j["ell"] = cfg.ell;
    bool good = false;
    if (is_sequence_text(text)) {
        const RainbowSequence s = parse_sequence(text);
        j["input"] = "sequence";
        j["k"] = s.palette();
        good = is_ell_good_seq(s, cfg.ell);
        auto windows = nlohmann::ordered_json::array();
        for (bool w : ell_good_windows(s, cfg.ell)) windows.push_back(w);
        j["windows"] = std::move(windows);
    } else {
        if (cfg.k == 0) throw std::invalid_argument("--k is required for graph input");
        const Graph g = parse_graph(text);
        j["input"] = "graph";
        j["k"] = cfg.k;
        auto s = find_ell_good_sequence(g, cfg.k, cfg.ell, cfg.budget);
        good = s.has_value();
        if (s) j["witness"] = write_rts(*s);
    }
    j["ell_good"] = good;
    emit_json(out, cfg, j);
    return good ? kExitOk : kExitNo;
}

inline int cmd_bounds(const CliConfig& cfg, std::ostream& out) {
    if (cfg.k == 0 || cfg.n == 0 || cfg.ell == 0) throw std::invalid_argument("--k, --n and --ell must be positive");
    emit_json(out, cfg, bound_report_to_json(make_bound_report(cfg.k, cfg.n, cfg.ell)));
    return kExitOk;
}

inline int cmd_witness(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.ell == 0) throw std::invalid_argument("--ell must be positive");
    RainbowSequence s;
    if (cfg.cycle) {
        if (cfg.k == 0 || cfg.n == 0) throw std::invalid_argument("--cycle needs positive --k and --n");
        s = cycling_sequence(cfg.k, cfg.n);
    } else {
        if (cfg.input.empty()) throw std::invalid_argument("witness needs a sequence file or --cycle");
        s = load_sequence(cfg);
    }
    nlohmann::ordered_json j;
    j["palette"] = s.palette();
    j["n"] = s.size();
    j["ell"] = cfg.ell;
    try {
        const WitnessSet w = build_witness_set(s, cfg.ell);
        const bool certified = certify_not_k_rainbow(seq_to_graph(s), w.x, w.k);
        j["k"] = w.k;
        j["t"] = w.t();
        j["prefix_size"] = w.prefix_size;
        j["middle_size"] = w.middle_size;
        j["suffix_size"] = w.suffix_size;
        j["x"] = vertex_json(w.x);
        j["classes"] = w.classes;
        j["bound"] = rational_json(w.bound);
        j["certified"] = certified;
        emit_json(out, cfg, j);
        return certified ? kExitOk : kExitNo;
    } catch (const WitnessError& e) {
        err << "witness: " << e.what() << "\n";
        j["certified"] = false;
        j["failure"] = to_string(e.failure());
        emit_json(out, cfg, j);
        return kExitNo;
    }
}

inline int cmd_experiment(const CliConfig& cfg, std::ostream& out) {
    const std::string text = read_text_file(cfg.input);
    nlohmann::json config;
    try {
        config = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON config: ") + e.what(), 0, 0);
    }
    auto params = parse_experiment_config(config);
    std::vector<ExperimentReport> reports;
    for (auto& p : params) {
        if (cfg.trials) p.trials = cfg.trials;
        if (cfg.seed) p.seed = cfg.seed;
        reports.push_back(run_experiment(p, cfg.budget));
    }
    if (cfg.format == "csv") {
        emit(out, cfg, reports_to_csv(reports));
    } else {
        emit_json(out, cfg, reports_to_json(reports, cfg.timing));
    }
    return kExitOk;
}

inline int dispatch(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string& s = cfg.subcommand;
    if (s == "build") return cmd_build(cfg, out);
    if (s == "graph-info") return cmd_graph_info(cfg, out);
    if (s == "enum") return cmd_enum(cfg, out);
    if (s == "recognize") return cmd_recognize(cfg, out);
    if (s == "min-index") return cmd_min_index(cfg, out);
    if (s == "neighborhood") return cmd_neighborhood(cfg, out);
    if (s == "good") return cmd_good(cfg, out);
    if (s == "bounds") return cmd_bounds(cfg, out);
    if (s == "witness") return cmd_witness(cfg, out, err);
    if (s == "experiment") return cmd_experiment(cfg, out);
    throw std::invalid_argument("unknown subcommand '" + s + "'");
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CliConfig cfg;
    CLI::App app{"k-rainbow threshold graph toolkit", "rainbow"};
    app.require_subcommand(1, 1);

    std::uint64_t budget_sequences = cfg.budget.max_sequences;
    std::uint64_t budget_orderings = cfg.budget.max_orderings;
    std::size_t budget_iso = cfg.budget.max_iso_vertices;
    double budget_time = cfg.budget.time_limit_seconds;

    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--budget-sequences", budget_sequences, "maximum sequences to enumerate")
            ->check(CLI::PositiveNumber);
        sub->add_option("--budget-orderings", budget_orderings, "maximum search nodes")->check(CLI::PositiveNumber);
        sub->add_option("--budget-iso-vertices", budget_iso, "largest n for up-to-isomorphism search")
            ->check(CLI::PositiveNumber);
        sub->add_option("--budget-time", budget_time, "time limit in seconds")->check(CLI::PositiveNumber);
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", cfg.output, "write the report to a file instead of stdout");
    };

    auto* build = app.add_subcommand("build", "sequence file -> graph file");
    build->add_option("input", cfg.input, "RTS v1 sequence file")->required();
    build->add_option("--format", cfg.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    add_output(build);

    auto* info = app.add_subcommand("graph-info", "summary of a graph file");
    info->add_option("input", cfg.input, "RTG v1 graph file")->required();
    add_output(info);
    add_budget(info);

    auto* en = app.add_subcommand("enum", "count RainSeq_k(n) and RainGraph_k(n)");
    en->add_option("--k", cfg.k, "palette size")->required()->check(CLI::PositiveNumber);
    en->add_option("--n", cfg.n, "number of vertices")->required();
    en->add_flag("--list", cfg.list, "include every graph's rows");
    add_output(en);
    add_budget(en);

    auto* rec = app.add_subcommand("recognize", "is the graph k-rainbow?");
    rec->add_option("input", cfg.input, "RTG v1 graph file")->required();
    rec->add_option("--k", cfg.k, "palette size")->required()->check(CLI::PositiveNumber);
    rec->add_flag("--up-to-iso", cfg.up_to_iso, "search over vertex orderings");
    add_output(rec);
    add_budget(rec);

    auto* mi = app.add_subcommand("min-index", "least k for the natural order");
    mi->add_option("input", cfg.input, "RTG v1 graph file")->required();
    add_output(mi);
    add_budget(mi);

    auto* nb = app.add_subcommand("neighborhood", "X-neighbourhood classes");
    nb->add_option("input", cfg.input, "RTG or RTS file")->required();
    nb->add_option("--X", cfg.x_list, "comma-separated vertices of X")->required();
    nb->add_option("--A", cfg.a_list, "comma-separated domain (default: all vertices)");
    nb->add_option("--k", cfg.k, "also compare against the class bound for k")->check(CLI::PositiveNumber);
    add_output(nb);

    auto* good = app.add_subcommand("good", "ell-goodness of a sequence or graph");
    good->add_option("input", cfg.input, "RTS or RTG file")->required();
    good->add_option("--ell", cfg.ell, "window length")->required();
    good->add_option("--k", cfg.k, "palette size for graph input")->check(CLI::PositiveNumber);
    add_output(good);
    add_budget(good);

    auto* bounds = app.add_subcommand("bounds", "closed-form goodness bounds");
    bounds->add_option("--k", cfg.k, "palette size")->required();
    bounds->add_option("--n", cfg.n, "number of vertices")->required();
    bounds->add_option("--ell", cfg.ell, "window length")->required();
    add_output(bounds);

    auto* wit = app.add_subcommand("witness", "separation witness set for a (k+1)-color sequence");
    wit->add_option("input", cfg.input, "RTS v1 sequence file");
    wit->add_flag("--cycle", cfg.cycle, "use the cycling sequence over k+1 colors");
    wit->add_option("--k", cfg.k, "smaller palette (with --cycle)");
    wit->add_option("--n", cfg.n, "length (with --cycle)");
    wit->add_option("--ell", cfg.ell, "window length")->required();
    add_output(wit);

    auto* exp = app.add_subcommand("experiment", "run experiments from a JSON config");
    exp->add_option("input", cfg.input, "JSON config file")->required();
    exp->add_option("--format", cfg.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    exp->add_option("--trials", cfg.trials, "override trial counts")->check(CLI::PositiveNumber);
    exp->add_option("--seed", cfg.seed, "override seeds");
    exp->add_flag("--timing", cfg.timing, "include wall time in JSON");
    add_output(exp);
    add_budget(exp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInvalid;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.budget.max_sequences = budget_sequences;
    cfg.budget.max_orderings = budget_orderings;
    cfg.budget.max_iso_vertices = budget_iso;
    cfg.budget.time_limit_seconds = budget_time;

    try {
        return detail::dispatch(cfg, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::logic_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace rainbow
