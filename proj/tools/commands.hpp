#pragma once

// Subcommand implementations for the `baggy` tool. Each command takes the
// parsed options and the stream standing in for stdout and returns the
// process exit code; main.cpp only does argument parsing.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "baggy/baggy.hpp"

namespace baggy::cli {

enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kResource = 3,
    kMismatch = 4,
};

struct Options {
    std::string graph;
    std::string tree;
    std::string formula;
    std::string out;
    /// Empty means the command's default: text for compile, CSV for
    /// bench, JSON elsewhere.
    std::string format;
    std::string mode = "pit";
    std::vector<std::string> family;
    std::vector<std::uint32_t> n;
    std::vector<int> delta;
    std::optional<std::uint64_t> seed;
    int trials = 20;
    std::optional<std::uint64_t> cap;
    bool hom = false;
};

inline int exit_code_for(Errc code) {
    return code == Errc::TooLarge || code == Errc::SizeLimit ? kResource : kValidation;
}

inline Json error_json(const Error& e) {
    Json j{{"error", std::string(errc_name(e.code()))}, {"message", e.what()}};
    if (e.edge()) {
        j["edge"] = {e.edge()->u, e.edge()->v};
    }
    return j;
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::Malformed, "cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Json read_json(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const nlohmann::json::exception& ex) {
        throw Error(Errc::Malformed, path + ": " + ex.what());
    }
}

/// Writes to --out when given, otherwise to the command's stdout.
inline void emit(const Options& opts, const std::string& text, std::ostream& out) {
    if (opts.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(opts.out, std::ios::binary);
    if (!file) {
        throw Error(Errc::Malformed, "cannot write " + opts.out);
    }
    file << text;
}

inline std::string dump(const Json& j) { return j.dump() + "\n"; }

inline PatternGraph load_graph(const Options& opts) {
    if (opts.graph.empty()) {
        throw Error(Errc::Malformed, "--graph is required");
    }
    PatternGraph g = graph_from_json(read_json(opts.graph));
    throw_if_error(validate(g));
    return g;
}

inline SolverOptions solver_options(const Options& opts) {
    SolverOptions s;
    if (opts.cap) {
        s.max_vertices = static_cast<int>(*opts.cap);
    }
    return s;
}

inline CompileOptions compile_options(const Options& opts) {
    CompileOptions c;
    if (opts.cap) {
        c.max_size = *opts.cap;
    }
    return c;
}

inline int single_delta(const Options& opts) {
    if (opts.delta.size() > 1) {
        throw Error(Errc::Malformed, "expected a single --delta");
    }
    int d = opts.delta.empty() ? 1 : opts.delta.front();
    if (d < 1) {
        throw Error(Errc::Malformed, "--delta must be >= 1");
    }
    return d;
}

inline std::uint32_t single_n(const Options& opts) {
    if (opts.n.size() != 1) {
        throw Error(Errc::Malformed, "expected exactly one --n");
    }
    if (opts.n.front() < 1) {
        throw Error(Errc::Malformed, "--n must be >= 1");
    }
    return opts.n.front();
}

/// --tree if given, else the solver's witness at --delta.
inline BaggyTree load_tree(const Options& opts, const PatternGraph& g) {
    if (!opts.tree.empty()) {
        BaggyTree t = tree_from_json(read_json(opts.tree));
        throw_if_error(validate_tree(t, g));
        return t;
    }
    LambdaResult r = lambda(g, single_delta(opts), solver_options(opts));
    return *r.witness;
}

inline Formula<ColIsoVar> load_formula(const Options& opts, const PatternGraph& g, std::uint32_t n) {
    if (!opts.formula.empty()) {
        std::istringstream in(read_file(opts.formula));
        return read_text<ColIsoVar>(in);
    }
    return compile(g, load_tree(opts, g), n, compile_options(opts));
}

inline std::uint64_t require_seed(const Options& opts) {
    if (!opts.seed) {
        throw Error(Errc::Malformed, "this command needs an explicit --seed");
    }
    return *opts.seed;
}

inline Json big_to_json(const BigInt& v) {
    if (v <= std::numeric_limits<std::uint64_t>::max()) {
        return v.convert_to<std::uint64_t>();
    }
    return v.str();
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

inline std::string to_csv(const Json& rows) {
    std::ostringstream os;
    if (rows.empty()) {
        return "";
    }
    bool first = true;
    for (const auto& [key, _] : rows.front().items()) {
        os << (first ? "" : ",") << csv_escape(key);
        first = false;
    }
    os << '\n';
    for (const auto& row : rows) {
        first = true;
        for (const auto& [_, value] : row.items()) {
            os << (first ? "" : ",");
            first = false;
            if (value.is_string()) {
                os << csv_escape(value.get<std::string>());
            } else if (!value.is_null()) {
                os << value.dump();
            }
        }
        os << '\n';
    }
    return os.str();
}

inline void require_format(const Options& opts, bool csv_ok) {
    if (opts.format.empty() || opts.format == "json" || (csv_ok && opts.format == "csv")) {
        return;
    }
    throw Error(Errc::Malformed, "unsupported --format " + opts.format);
}

} // namespace detail

inline int cmd_gen(const Options& opts, std::ostream& out) {
    std::string text;
    for (const auto& part : opts.family) {
        text += (text.empty() ? "" : " ") + part;
    }
    PatternGraph g = generate(FamilySpec::parse(text));
    detail::emit(opts, detail::dump(graph_to_json(g)), out);
    return kOk;
}

inline int cmd_solve(const Options& opts, std::ostream& out) {
    detail::require_format(opts, true);
    PatternGraph g = detail::load_graph(opts);
    int delta = detail::single_delta(opts);
    LambdaSolver solver(g, detail::solver_options(opts));
    LambdaResult r = solver.solve(delta);
    Json j{{"lambda", *r.value}, {"delta", delta}, {"witness", tree_to_json(*r.witness)},
           {"treedepth", solver.treedepth()}};
    if (opts.format == "csv") {
        j["witness"] = j["witness"].dump();
        detail::emit(opts, detail::to_csv(Json::array({j})), out);
    } else {
        detail::emit(opts, detail::dump(j), out);
    }
    return kOk;
}

/// Reports the first failed check; exit 2 when the graph or tree is invalid.
inline int cmd_validate(const Options& opts, std::ostream& out) {
    detail::require_format(opts, false);
    if (opts.graph.empty()) {
        throw Error(Errc::Malformed, "--graph is required");
    }
    PatternGraph g = graph_from_json(detail::read_json(opts.graph));
    Status status = validate(g);
    Json j{{"valid", true}, {"k", g.k()}, {"edges", g.edge_count()}};
    if (!status && !opts.tree.empty()) {
        BaggyTree t = tree_from_json(detail::read_json(opts.tree));
        status = validate_tree(t, g);
        if (!status) {
            TreeMetrics m = metrics(t, g);
            j["cost"] = m.cost;
            j["product_depth"] = m.product_depth;
            j["core_leaves"] = m.core_leaves;
        }
    }
    if (status) {
        j = error_json(*status);
        j = Json{{"valid", false}, {"error", j["error"]}, {"message", j["message"]}};
        if (status->edge()) {
            j["edge"] = {status->edge()->u, status->edge()->v};
        }
    }
    detail::emit(opts, detail::dump(j), out);
    return status ? kValidation : kOk;
}

/// Writes the formula (text, or the JSON variant with --format json) to
/// --out and a short report to stdout.
inline int cmd_compile(const Options& opts, std::ostream& out) {
    PatternGraph g = detail::load_graph(opts);
    std::uint32_t n = detail::single_n(opts);
    BaggyTree t = detail::load_tree(opts, g);
    Formula<ColIsoVar> f = compile(g, t, n, detail::compile_options(opts));
    std::string body;
    if (opts.format == "json") {
        body = formula_to_json(f).dump() + "\n";
    } else if (!opts.format.empty() && opts.format != "text") {
        throw Error(Errc::Malformed, "unsupported --format " + opts.format);
    } else {
        std::ostringstream os;
        write_text(os, f);
        body = os.str();
    }
    FormulaMetrics m = measure(f);
    Json report{{"n", n}, {"size", m.size}, {"product_depth", m.product_depth}, {"gates", f.gate_count()}};
    if (opts.out.empty()) {
        out << body;
    } else {
        detail::emit(opts, body, out);
        out << detail::dump(report);
    }
    return kOk;
}

inline int cmd_predict_size(const Options& opts, std::ostream& out) {
    detail::require_format(opts, true);
    PatternGraph g = detail::load_graph(opts);
    BaggyTree t = detail::load_tree(opts, g);
    if (opts.n.empty()) {
        throw Error(Errc::Malformed, "--n is required");
    }
    Json rows = Json::array();
    for (std::uint32_t n : opts.n) {
        rows.push_back({{"n", n}, {"size", detail::big_to_json(predicted_size(g, t, n))}});
    }
    detail::emit(opts, opts.format == "csv" ? detail::to_csv(rows) : detail::dump(rows), out);
    return kOk;
}

/// Exact mode compares monomial expansions, pit mode runs the randomized
/// identity test. --hom checks the projected Hom formula instead.
inline int cmd_verify(const Options& opts, std::ostream& out) {
    detail::require_format(opts, false);
    PatternGraph g = detail::load_graph(opts);
    std::uint32_t n = detail::single_n(opts);
    Formula<ColIsoVar> f = detail::load_formula(opts, g, n);
    Json j{{"mode", opts.mode}};
    bool equal = false;
    if (opts.mode == "exact") {
        if (opts.hom) {
            equal = expand(hom_project(f, g, n)) == brute_hom_monomials(g, n);
        } else {
            equal = expand(f) == brute_coliso_monomials(g, n);
        }
        j["result"] = equal ? "equal" : "mismatch";
        j["seeds"] = Json::array();
        j["trials"] = 0;
    } else if (opts.mode == "pit") {
        std::uint64_t seed = detail::require_seed(opts);
        if (opts.trials < 1) {
            throw Error(Errc::Malformed, "--trials must be >= 1");
        }
        PitResult r;
        if (opts.hom) {
            HomSpace space{n};
            r = pit_equiv(formula_evaluator(hom_project(f, g, n), space), hom_oracle(g, n), space.size(),
                          opts.trials, seed);
        } else {
            ColIsoSpace space{g.edge_count(), n};
            r = pit_equiv(formula_evaluator(f, space), coliso_oracle(g, n), space.size(), opts.trials, seed);
        }
        equal = r.equal;
        j["result"] = equal ? "equal" : "counterexample";
        j["seeds"] = r.seeds;
        j["trials"] = r.trials;
        if (r.counterexample) {
            Json values = Json::array();
            for (Fp x : *r.counterexample) {
                values.push_back(x.value());
            }
            j["counterexample"] = std::move(values);
        }
    } else {
        throw Error(Errc::Malformed, "--mode must be exact or pit");
    }
    detail::emit(opts, detail::dump(j), out);
    return equal ? kOk : kMismatch;
}

/// Samples one parse tree of the compiled formula and lifts it back.
inline int cmd_lift(const Options& opts, std::ostream& out) {
    detail::require_format(opts, false);
    PatternGraph g = detail::load_graph(opts);
    std::uint32_t n = detail::single_n(opts);
    std::uint64_t seed = detail::require_seed(opts);
    Formula<ColIsoVar> f = detail::load_formula(opts, g, n);
    ParseTree<ColIsoVar> pt = sample_parse_tree(f, seed);
    BaggyTree lifted = lift(pt, g);
    throw_if_error(validate_tree(lifted, g));
    TreeMetrics m = metrics(lifted, g);
    Json monomial = Json::array();
    for (const ColIsoVar& x : pt.monomial()) {
        monomial.push_back(var_to_json(x));
    }
    Json j{{"seed", seed},
           {"monomial", std::move(monomial)},
           {"tree", tree_to_json(lifted)},
           {"cost", m.cost},
           {"product_depth", m.product_depth},
           {"formula_product_depth", measure(f).product_depth}};
    detail::emit(opts, detail::dump(j), out);
    return kOk;
}

inline const std::vector<std::string>& default_bench_families() {
    static const std::vector<std::string> families{"path 7",       "cycle 5",       "complete 4",
                                                   "grid 2 3",     "full_bary 2 3", "full_bary 3 3",
                                                   "full_bary 2 4", "full_bary 3 4"};
    return families;
}

namespace detail {

struct BenchRow {
    std::string family;
    int k = 0;
    std::size_t edges = 0;
    int delta = 0;
    std::optional<int> lambda;
    std::optional<int> treedepth;
    std::optional<int> bound;
    std::optional<int> cost;
    std::optional<int> product_depth;
    std::vector<std::optional<BigInt>> sizes;
    std::string status = "ok";
};

inline BenchRow make_row(std::string family, const PatternGraph& g, int delta) {
    BenchRow row;
    row.family = std::move(family);
    row.k = g.k();
    row.edges = g.edge_count();
    row.delta = delta;
    return row;
}

inline Json row_to_json(const BenchRow& row, const std::vector<std::uint32_t>& ns) {
    auto opt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(); };
    Json j{{"family", row.family},   {"k", row.k},
           {"edges", row.edges},     {"delta", row.delta},
           {"lambda", opt(row.lambda)}, {"treedepth", opt(row.treedepth)},
           {"bound", opt(row.bound)}, {"cost", opt(row.cost)},
           {"product_depth", opt(row.product_depth)}};
    for (std::size_t i = 0; i < ns.size(); ++i) {
        j["size_n" + std::to_string(ns[i])] = row.sizes.empty() ? Json() : big_to_json(*row.sizes[i]);
    }
    // Fitted exponent between consecutive n: log(s2 / s1) / log(n2 / n1).
    for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
        std::string key = "exponent_" + std::to_string(ns[i]) + "_" + std::to_string(ns[i + 1]);
        if (row.sizes.empty()) {
            j[key] = Json();
            continue;
        }
        double ratio = (*row.sizes[i + 1]).convert_to<double>() / (*row.sizes[i]).convert_to<double>();
        double e = std::log(ratio) / std::log(static_cast<double>(ns[i + 1]) / ns[i]);
        j[key] = std::round(e * 10000.0) / 10000.0;
    }
    j["status"] = row.status;
    return j;
}

/// The hierarchy bound b + delta, for full b-ary trees of depth delta + 2.
inline std::optional<int> hierarchy_bound(const FamilySpec& spec, int delta) {
    if (spec.name == "full_bary" && spec.params.size() == 2 && spec.params[1] == delta + 2 &&
        spec.params[0] > delta) {
        return spec.params[0] + delta;
    }
    return std::nullopt;
}

inline void fill_sizes(BenchRow& row, const PatternGraph& g, const BaggyTree& t,
                       const std::vector<std::uint32_t>& ns) {
    TreeMetrics m = metrics(t, g);
    row.cost = m.cost;
    row.product_depth = m.product_depth;
    for (std::uint32_t n : ns) {
        row.sizes.emplace_back(predicted_size(g, t, n));
    }
}

} // namespace detail

/// Table of exact lambda, treedepth and formula sizes. Without --graph it
/// sweeps the default families; with --graph (and optionally --tree) it
/// reports that instance. Instances over the solver cap are marked
/// `too_large` rather than failing the run.
inline int cmd_bench(const Options& opts, std::ostream& out) {
    detail::require_format(opts, true);
    const bool csv = opts.format != "json";
    std::vector<std::uint32_t> ns = opts.n.empty() ? std::vector<std::uint32_t>{16, 32, 64} : opts.n;
    for (std::uint32_t n : ns) {
        if (n < 1) {
            throw Error(Errc::Malformed, "--n must be >= 1");
        }
    }
    std::vector<int> deltas = opts.delta.empty() ? std::vector<int>{1, 2, 3} : opts.delta;
    for (int d : deltas) {
        if (d < 1) {
            throw Error(Errc::Malformed, "--delta must be >= 1");
        }
    }
    Json rows = Json::array();
    SolverOptions sopts = detail::solver_options(opts);

    if (!opts.graph.empty()) {
        PatternGraph g = detail::load_graph(opts);
        std::optional<BaggyTree> fixed;
        if (!opts.tree.empty()) {
            fixed = detail::load_tree(opts, g);
            deltas = {metrics(*fixed, g).product_depth};
        }
        for (int d : deltas) {
            detail::BenchRow row = detail::make_row(opts.graph, g, d);
            try {
                LambdaSolver solver(g, sopts);
                LambdaResult r = solver.solve(d);
                row.lambda = r.value;
                row.treedepth = solver.treedepth();
                detail::fill_sizes(row, g, fixed ? *fixed : *r.witness, ns);
            } catch (const Error& e) {
                if (exit_code_for(e.code()) != kResource) {
                    throw;
                }
                row.status = "too_large";
                if (fixed) {
                    detail::fill_sizes(row, g, *fixed, ns);
                }
            }
            rows.push_back(detail::row_to_json(row, ns));
        }
    } else {
        std::vector<std::string> families = opts.family.empty() ? default_bench_families() : opts.family;
        for (const std::string& text : families) {
            FamilySpec spec = FamilySpec::parse(text);
            PatternGraph g = generate(spec);
            std::optional<LambdaSolver> solver;
            std::optional<int> td;
            if (g.k() <= sopts.max_vertices) {
                solver.emplace(g, sopts);
                td = solver->treedepth();
            }
            for (int d : deltas) {
                detail::BenchRow row = detail::make_row(spec.label(), g, d);
                row.bound = detail::hierarchy_bound(spec, d);
                if (!solver) {
                    row.status = "too_large";
                } else {
                    LambdaResult r = solver->solve(d);
                    row.lambda = r.value;
                    row.treedepth = td;
                    detail::fill_sizes(row, g, *r.witness, ns);
                }
                rows.push_back(detail::row_to_json(row, ns));
            }
        }
    }
    detail::emit(opts, csv ? detail::to_csv(rows) : detail::dump(rows), out);
    return kOk;
}

/// Runs a subcommand, mapping library errors to exit codes and reporting
/// them as JSON on `err`.
template <class Command>
int run(Command&& command, const Options& opts, std::ostream& out, std::ostream& err) {
    try {
        return command(opts, out);
    } catch (const Error& e) {
        err << error_json(e).dump() << '\n';
        return exit_code_for(e.code());
    }
}

} // namespace baggy::cli
