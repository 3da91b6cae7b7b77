#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace baggy::cli;

namespace {

void add_graph(CLI::App* cmd, Options& o) { cmd->add_option("--graph", o.graph, "Pattern graph JSON")->required(); }
void add_tree(CLI::App* cmd, Options& o) { cmd->add_option("--tree", o.tree, "Baggy tree JSON"); }
void add_out(CLI::App* cmd, Options& o) { cmd->add_option("--out", o.out, "Output file (default stdout)"); }
void add_format(CLI::App* cmd, Options& o) { cmd->add_option("--format", o.format, "json | csv"); }
void add_cap(CLI::App* cmd, Options& o, const char* what) { cmd->add_option("--cap", o.cap, what); }

void add_seed(CLI::App* cmd, Options& o) {
    cmd->add_option_function<std::uint64_t>("--seed", [&o](std::uint64_t s) { o.seed = s; }, "RNG seed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Baggy elimination trees and monotone formulas for colored isomorphism polynomials"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("gen", "Generate a pattern graph, e.g. `gen path 7`");
    gen->add_option("family", o.family, "Family name and parameters")->required()->expected(1, -1);
    add_out(gen, o);

    auto* solve = app.add_subcommand("solve", "Exact lambda_delta with a witness tree");
    add_graph(solve, o);
    solve->add_option("--delta", o.delta, "Product-depth budget")->expected(1);
    add_cap(solve, o, "Largest pattern the solver accepts");
    add_format(solve, o);
    add_out(solve, o);

    auto* validate = app.add_subcommand("validate", "Check a graph and optionally a tree");
    add_graph(validate, o);
    add_tree(validate, o);
    add_out(validate, o);

    auto* compile = app.add_subcommand("compile", "Materialize the formula of a tree");
    add_graph(compile, o);
    add_tree(compile, o);
    compile->add_option("--n", o.n, "Host size")->expected(1);
    compile->add_option("--delta", o.delta, "Depth for the solver witness when --tree is absent")->expected(1);
    add_cap(compile, o, "Largest formula size (edges) to materialize");
    compile->add_option("--format", o.format, "text | json");
    add_out(compile, o);

    auto* predict = app.add_subcommand("predict-size", "Exact formula size without materializing");
    add_graph(predict, o);
    add_tree(predict, o);
    predict->add_option("--n", o.n, "Host sizes")->delimiter(',');
    predict->add_option("--delta", o.delta, "Depth for the solver witness when --tree is absent")->expected(1);
    add_format(predict, o);
    add_out(predict, o);

    auto* verify = app.add_subcommand("verify", "Check a formula against the brute-force oracle");
    add_graph(verify, o);
    add_tree(verify, o);
    verify->add_option("--formula", o.formula, "Formula text file (default: compile --tree)");
    verify->add_option("--n", o.n, "Host size")->expected(1);
    verify->add_option("--delta", o.delta, "Depth for the solver witness when --tree is absent")->expected(1);
    verify->add_option("--mode", o.mode, "exact | pit")->check(CLI::IsMember({"exact", "pit"}));
    add_seed(verify, o);
    verify->add_option("--trials", o.trials, "PIT trials");
    verify->add_flag("--hom", o.hom, "Check the Hom projection instead");
    add_cap(verify, o, "Largest formula size (edges) to materialize");
    add_out(verify, o);

    auto* lift = app.add_subcommand("lift", "Sample a parse tree and lift it to a baggy tree");
    add_graph(lift, o);
    add_tree(lift, o);
    lift->add_option("--formula", o.formula, "Formula text file (default: compile --tree)");
    lift->add_option("--n", o.n, "Host size")->expected(1);
    lift->add_option("--delta", o.delta, "Depth for the solver witness when --tree is absent")->expected(1);
    add_seed(lift, o);
    add_cap(lift, o, "Largest formula size (edges) to materialize");
    add_out(lift, o);

    auto* bench = app.add_subcommand("bench", "Lambda, treedepth and size-exponent table");
    bench->add_option("--family", o.family, "Family spec, repeatable (e.g. \"full_bary 2 3\")");
    bench->add_option("--graph", o.graph, "Single pattern graph instead of a family sweep");
    add_tree(bench, o);
    bench->add_option("--delta", o.delta, "Depth sweep")->delimiter(',');
    bench->add_option("--n", o.n, "Host sizes for the size columns")->delimiter(',');
    add_cap(bench, o, "Largest pattern the solver accepts");
    add_format(bench, o);
    add_out(bench, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kValidation;
    }

    auto dispatch = [&](auto command) { return run(command, o, std::cout, std::cerr); };
    if (*gen) return dispatch(cmd_gen);
    if (*solve) return dispatch(cmd_solve);
    if (*validate) return dispatch(cmd_validate);
    if (*compile) return dispatch(cmd_compile);
    if (*predict) return dispatch(cmd_predict_size);
    if (*verify) return dispatch(cmd_verify);
    if (*lift) return dispatch(cmd_lift);
    return dispatch(cmd_bench);
}
