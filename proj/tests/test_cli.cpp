#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "commands.hpp"

using namespace baggy;
using namespace baggy::cli;
namespace fs = std::filesystem;

namespace {

struct Workspace {
    fs::path dir;

    Workspace() {
        dir = fs::temp_directory_path() / ("baggy_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text) const {
        fs::path p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

template <class Command>
Outcome call(Command command, const Options& o) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run(command, o, out, err);
    return {code, out.str(), err.str()};
}

const char* kEvenRoot = R"({"bag":[2,4,6],"children":[{"bag":[1]},{"bag":[3]},{"bag":[5]},{"bag":[7]}]})";
const char* kP3Tree = R"({"bag":[2],"children":[{"bag":[1]},{"bag":[3]}]})";

} // namespace

TEST_CASE("gen", "[cli]") {
    Workspace ws;
    Options o;
    o.family = {"path", "7"};
    Outcome r = call(cmd_gen, o);
    CHECK(r.code == kOk);
    CHECK(r.out == "{\"k\":7,\"edges\":[[1,2],[2,3],[3,4],[4,5],[5,6],[6,7]]}\n");

    o.family = {"full_bary", "2", "3"};
    o.out = ws.path("f23.json");
    CHECK(call(cmd_gen, o).code == kOk);
    CHECK(graph_from_json(Json::parse(slurp(o.out))).k() == 7);

    o.family = {"path", "2"};
    o.out.clear();
    r = call(cmd_gen, o);
    CHECK(r.code == kValidation);
    CHECK(Json::parse(r.err)["error"] == "TooFewEdges");
}

TEST_CASE("solve", "[cli]") {
    Workspace ws;
    Options o;
    o.graph = ws.write("p7.json", graph_to_json(make_path(7)).dump());
    o.delta = {2};
    Outcome r = call(cmd_solve, o);
    REQUIRE(r.code == kOk);
    Json j = Json::parse(r.out);
    std::vector<std::string> keys;
    for (const auto& [key, _] : j.items()) {
        keys.push_back(key);
    }
    CHECK(keys == std::vector<std::string>{"lambda", "delta", "witness", "treedepth"});
    CHECK(j["lambda"] == 4);
    CHECK(j["treedepth"] == 3);
    CHECK(j["witness"]["bag"] == Json::array({4}));

    o.delta = {3};
    CHECK(Json::parse(call(cmd_solve, o).out)["lambda"] == 3);

    o.graph = ws.write("f23.json", graph_to_json(make_full_bary(2, 3)).dump());
    o.delta = {1};
    CHECK(Json::parse(call(cmd_solve, o).out)["lambda"] == 4);

    o.delta = {0};
    CHECK(call(cmd_solve, o).code == kValidation);
    o.delta = {1};
    o.cap = 5;
    CHECK(call(cmd_solve, o).code == kResource);

    o.cap.reset();
    o.format = "csv";
    r = call(cmd_solve, o);
    CHECK(r.out.rfind("lambda,delta,witness,treedepth\n4,1,", 0) == 0);

    o.graph = ws.write("bad.json", R"({"k":4,"edges":[[1,2],[3,4]]})");
    o.format.clear();
    r = call(cmd_solve, o);
    CHECK(r.code == kValidation);
    CHECK(Json::parse(r.err)["error"] == "Disconnected");
    o.graph = ws.path("missing.json");
    CHECK(call(cmd_solve, o).code == kValidation);
}

TEST_CASE("validate", "[cli]") {
    Workspace ws;
    Options o;
    o.graph = ws.write("p7.json", graph_to_json(make_path(7)).dump());
    o.tree = ws.write("p7_even_root.json", kEvenRoot);
    Outcome r = call(cmd_validate, o);
    CHECK(r.code == kOk);
    Json j = Json::parse(r.out);
    CHECK(j["cost"] == 4);
    CHECK(j["product_depth"] == 2);

    o.tree = ws.write("star.json", R"({"bag":[4],"children":[{"bag":[1]},{"bag":[2]},{"bag":[3]},)"
                                   R"({"bag":[5]},{"bag":[6]},{"bag":[7]}]})");
    r = call(cmd_validate, o);
    CHECK(r.code == kValidation);
    j = Json::parse(r.out);
    CHECK(j["valid"] == false);
    CHECK(j["error"] == "EdgeUncovered");
    CHECK(j["edge"] == Json::array({1, 2}));
}

TEST_CASE("compile and predict-size", "[cli]") {
    Workspace ws;
    Options o;
    o.graph = ws.write("p3.json", graph_to_json(make_path(3)).dump());
    o.tree = ws.write("p3_tree.json", kP3Tree);
    o.n = {2};
    o.out = ws.path("p3.txt");
    Outcome r = call(cmd_compile, o);
    REQUIRE(r.code == kOk);
    CHECK(Json::parse(r.out)["size"] == 14);
    std::istringstream text(slurp(o.out));
    CHECK(measure(read_text<ColIsoVar>(text)).size == 14);

    std::string first = slurp(o.out);
    CHECK(call(cmd_compile, o).code == kOk);
    CHECK(slurp(o.out) == first);

    o.format = "json";
    o.out = ws.path("p3.formula.json");
    CHECK(call(cmd_compile, o).code == kOk);
    CHECK(Json::parse(slurp(o.out))["op"] == "sum");

    Options p;
    p.graph = ws.write("p7.json", graph_to_json(make_path(7)).dump());
    p.tree = ws.write("p7_even_root.json", kEvenRoot);
    p.n = {4, 8};
    Json sizes = Json::parse(call(cmd_predict_size, p).out);
    CHECK(sizes[0]["size"] == 64 * 37);
    CHECK(sizes[1]["size"] == 512 * 69);

    p.n = {64};
    p.cap = 1000;
    CHECK(call(cmd_compile, p).code == kResource);
}

TEST_CASE("verify", "[cli]") {
    Workspace ws;
    Options o;
    o.graph = ws.write("p3.json", graph_to_json(make_path(3)).dump());
    o.tree = ws.write("p3_tree.json", kP3Tree);
    o.n = {2};
    o.mode = "exact";
    Outcome r = call(cmd_verify, o);
    CHECK(r.code == kOk);
    Json j = Json::parse(r.out);
    CHECK(j["mode"] == "exact");
    CHECK(j["result"] == "equal");

    o.hom = true;
    CHECK(call(cmd_verify, o).code == kOk);
    o.hom = false;

    o.mode = "pit";
    CHECK(call(cmd_verify, o).code == kValidation); // no --seed
    o.seed = 5;
    r = call(cmd_verify, o);
    CHECK(r.code == kOk);
    j = Json::parse(r.out);
    CHECK(j["trials"] == 20);
    CHECK(j["seeds"].size() == 20);
    CHECK(call(cmd_verify, o).out == r.out);

    // A formula with one variable leaf deleted is a mismatch.
    Formula<ColIsoVar> mutant = compile(make_path(3), tree_from_json(Json::parse(kP3Tree)), 2).without_leaf(3);
    std::ostringstream os;
    write_text(os, mutant);
    o.formula = ws.write("mutant.txt", os.str());
    r = call(cmd_verify, o);
    CHECK(r.code == kMismatch);
    j = Json::parse(r.out);
    CHECK(j["result"] == "counterexample");
    CHECK(j["counterexample"].size() == 8);
    o.mode = "exact";
    CHECK(call(cmd_verify, o).code == kMismatch);
}

TEST_CASE("lift", "[cli]") {
    Workspace ws;
    Options o;
    o.graph = ws.write("p7.json", graph_to_json(make_path(7)).dump());
    o.tree = ws.write("p7_even_root.json", kEvenRoot);
    o.n = {3};
    o.seed = 1;
    Outcome r = call(cmd_lift, o);
    REQUIRE(r.code == kOk);
    Json j = Json::parse(r.out);
    CHECK(j["tree"]["bag"] == Json::array({2, 4, 6}));
    CHECK(j["tree"]["children"].size() == 4);
    CHECK(j["monomial"].size() == 6);
    CHECK(j["product_depth"] == 2);
    o.seed.reset();
    CHECK(call(cmd_lift, o).code == kValidation);
}

TEST_CASE("bench", "[cli]") {
    Workspace ws;
    Options o;
    o.family = {"full_bary 2 3", "path 7"};
    o.format = "json";
    Outcome r = call(cmd_bench, o);
    REQUIRE(r.code == kOk);
    Json rows = Json::parse(r.out);
    REQUIRE(rows.size() == 6);
    std::vector<int> lambdas;
    for (const auto& row : rows) {
        lambdas.push_back(row["lambda"].get<int>());
        CHECK(row["treedepth"].get<int>() <= row["lambda"].get<int>());
    }
    CHECK(lambdas == std::vector<int>{4, 3, 3, 6, 4, 3});
    CHECK(rows[0]["treedepth"] == 3);
    CHECK(rows[0]["bound"] == 3);
    for (const auto& row : rows) {
        CHECK(std::abs(row["exponent_32_64"].get<double>() - row["cost"].get<double>()) <= 0.25);
    }

    Options fixed;
    fixed.graph = ws.write("p7.json", graph_to_json(make_path(7)).dump());
    fixed.tree = ws.write("p7_even_root.json", kEvenRoot);
    fixed.format = "json";
    Json even = Json::parse(call(cmd_bench, fixed).out);
    REQUIRE(even.size() == 1);
    CHECK(even[0]["cost"] == 4);
    CHECK(std::abs(even[0]["exponent_16_32"].get<double>() - 4.0) <= 0.25);
    CHECK(std::abs(even[0]["exponent_32_64"].get<double>() - 4.0) <= 0.25);

    Options sweep;
    sweep.out = ws.path("bench.csv");
    REQUIRE(call(cmd_bench, sweep).code == kOk);
    std::string first = slurp(sweep.out);
    CHECK(first.rfind("family,k,edges,delta,lambda,treedepth,bound,cost,product_depth,", 0) == 0);
    CHECK(first.find("full_bary 3 4,40,39,1,,,,,,,,,,,too_large") != std::string::npos);
    REQUIRE(call(cmd_bench, sweep).code == kOk);
    CHECK(slurp(sweep.out) == first);
}

#ifdef BAGGY_CLI_PATH
TEST_CASE("binary exit codes", "[cli]") {
    Workspace ws;
    std::string bin = BAGGY_CLI_PATH;
    auto status = [](const std::string& cmd) {
        int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    std::string p3 = ws.write("p3.json", graph_to_json(make_path(3)).dump());
    std::string tree = ws.write("p3_tree.json", kP3Tree);
    CHECK(status(bin + " gen path 7") == 0);
    CHECK(status(bin + " gen path 2") == 2);
    CHECK(status(bin + " solve --graph " + p3 + " --delta 1") == 0);
    CHECK(status(bin + " solve") == 2);
    CHECK(status(bin + " compile --graph " + p3 + " --tree " + tree + " --n 50 --cap 10") == 3);
    CHECK(status(bin + " verify --graph " + p3 + " --tree " + tree + " --n 2 --mode exact") == 0);

    std::ostringstream os;
    write_text(os, compile(make_path(3), tree_from_json(Json::parse(kP3Tree)), 2).without_leaf(3));
    std::string mutant = ws.write("mutant.txt", os.str());
    CHECK(status(bin + " verify --graph " + p3 + " --formula " + mutant + " --n 2 --seed 1") == 4);
}
#endif
