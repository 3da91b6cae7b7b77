// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Tolerances and time limits are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "baggy/baggy.hpp"
#include "support.hpp"

using namespace baggy;

namespace {

constexpr double kExponentTolerance = 0.25;
constexpr int kPitTrials = 20;
constexpr int kLiftSamples = 100;
constexpr int kStreamingSamples = 100;
constexpr std::uint32_t kSuiteN = 8;

struct Check {
    bool ok = true;
    std::ostringstream detail;
    std::string first_failure;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<void(Check&)>& body) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(seconds < limit_seconds, "runtime over limit");
    if (!c.ok) {
        ++failures;
    }
    std::printf("criterion %d %s  %s | %s| %.2f s (limit %.0f s)%s%s\n", id, c.ok ? "PASS" : "FAIL", title,
                c.detail.str().c_str(), seconds, limit_seconds, c.ok ? "" : " | failed: ",
                c.first_failure.c_str());
    std::fflush(stdout);
}

BaggyTree even_root_tree() { return BaggyTree::from_nested({{2, 4, 6}, {{{1}, {}}, {{3}, {}}, {{5}, {}}, {{7}, {}}}}); }

std::vector<PatternGraph> graphs_between(int lo, int hi) {
    std::vector<PatternGraph> out;
    for (int k = lo; k <= hi; ++k) {
        for (PatternGraph& g : enumerate_connected_graphs(k)) {
            out.push_back(std::move(g));
        }
    }
    return out;
}

struct Instance {
    std::string name;
    PatternGraph graph;
    BaggyTree tree;
};

/// The randomized suite: solver witnesses at depth 1..3 for each pattern,
/// plus the even-root tree for P7. Repeated trees are kept once.
std::vector<Instance> randomized_suite() {
    std::vector<Instance> out;
    for (const char* spec : {"path 7", "cycle 5", "complete 4", "full_bary 2 3", "grid 2 3"}) {
        PatternGraph g = generate(FamilySpec::parse(spec));
        LambdaSolver solver(g);
        std::vector<BaggyTree::Nested> seen;
        for (int delta = 1; delta <= 3; ++delta) {
            BaggyTree t = *solver.solve(delta).witness;
            BaggyTree::Nested n = t.to_nested();
            if (std::find(seen.begin(), seen.end(), n) != seen.end()) {
                continue;
            }
            seen.push_back(n);
            out.push_back({std::string(spec) + " witness delta=" + std::to_string(delta), g, t});
        }
        if (std::string(spec) == "path 7") {
            out.push_back({"path 7 even-root", g, even_root_tree()});
        }
    }
    return out;
}

/// Remembers oracle values so several trees of one pattern share the
/// brute-force work; PIT with a fixed seed revisits the same points.
Evaluator memoized(Evaluator inner) {
    auto cache = std::make_shared<std::map<std::vector<std::uint64_t>, Fp>>();
    return [inner = std::move(inner), cache](std::span<const Fp> values) {
        std::vector<std::uint64_t> key;
        key.reserve(values.size());
        for (Fp x : values) {
            key.push_back(x.value());
        }
        if (auto it = cache->find(key); it != cache->end()) {
            return it->second;
        }
        Fp v = inner(values);
        cache->emplace(std::move(key), v);
        return v;
    };
}

/// Deletes the first variable leaf whose parent keeps at least one child.
Formula<ColIsoVar> leaf_deletion_mutant(const Formula<ColIsoVar>& f) {
    for (std::size_t i = 1; i < f.gate_count(); ++i) {
        if (f.gate(i).kind != GateKind::Var) {
            continue;
        }
        try {
            return f.without_leaf(i);
        } catch (const Error&) {
        }
    }
    throw Error(Errc::Degenerate, "no deletable leaf");
}

} // namespace

int main() {
    const std::uint64_t seed = 20240601;

    criterion(1, "even-root tree", 10, [](Check& c) {
        PatternGraph p7 = make_path(7);
        BaggyTree t = even_root_tree();
        c.expect(!validate_tree(t, p7), "even-root tree does not validate");
        TreeMetrics m = metrics(t, p7);
        c.expect(m.cost == 4, "cost != 4");
        c.expect(m.product_depth == 2, "product depth != 2");
        c.detail << "cost=" << m.cost << " pd=" << m.product_depth << " ";
        for (std::uint32_t n : {4U, 8U}) {
            Formula<ColIsoVar> f = compile(p7, t, n);
            FormulaMetrics fm = measure(f);
            BigInt predicted = predicted_size(p7, t, n);
            c.expect(fm.product_depth == 2, "compiled product depth != 2");
            c.expect(BigInt(fm.size) == predicted, "measured size != predicted size");
            c.detail << "n=" << n << ":size=" << fm.size << "/pred=" << predicted << "/pd=" << fm.product_depth
                     << " ";
        }
        double s64 = predicted_size(p7, t, 64).convert_to<double>();
        double s128 = predicted_size(p7, t, 128).convert_to<double>();
        double exponent = std::log2(s128 / s64);
        c.expect(std::abs(exponent - 4.0) <= kExponentTolerance, "size exponent outside 4 +- 0.25");
        c.detail << "exponent(64->128)=" << exponent << " (4 +- " << kExponentTolerance << ") ";
    });

    const std::vector<PatternGraph> small = graphs_between(3, 6);

    criterion(2, "solver vs brute-force oracle", 300, [&](Check& c) {
        int pairs = 0;
        for (const PatternGraph& g : small) {
            BruteForceLambda brute(g);
            LambdaSolver solver(g);
            for (int delta = 1; delta <= 6; ++delta) {
                LambdaResult fast = solver.solve(delta);
                LambdaResult slow = brute.solve(delta);
                c.expect(fast.value == slow.value, "lambda disagrees with brute force");
                c.expect(fast.witness && !validate_tree(*fast.witness, g), "witness does not validate");
                if (fast.witness) {
                    TreeMetrics m = metrics(*fast.witness, g);
                    c.expect(m.cost == *fast.value, "witness cost differs from claimed lambda");
                    c.expect(m.product_depth <= delta, "witness product depth over budget");
                }
                ++pairs;
            }
        }
        int six = static_cast<int>(enumerate_connected_graphs(6).size());
        c.detail << small.size() << " graphs on 3-6 vertices (" << six << " on 6), " << pairs
                 << " (graph, delta) pairs ";
    });

    criterion(3, "lambda landmarks", 120, [](Check& c) {
        PatternGraph p7 = make_path(7);
        PatternGraph k3 = make_complete(3);
        PatternGraph f23 = make_full_bary(2, 3);
        PatternGraph f33 = make_full_bary(3, 3);
        struct Landmark {
            const char* name;
            const PatternGraph* g;
            int delta;
            int expected;
            int bound;
            bool brute;
        };
        std::vector<Landmark> marks{{"P7", &p7, 1, 6, 0, true},   {"P7", &p7, 2, 4, 0, true},
                                    {"P7", &p7, 3, 3, 0, true},   {"K3", &k3, 1, 3, 0, true},
                                    {"K3", &k3, 2, 3, 0, true},   {"K3", &k3, 3, 3, 0, true},
                                    {"F23", &f23, 1, 4, 3, true}, {"F33", &f33, 1, 5, 4, false}};
        for (const Landmark& m : marks) {
            int value = *lambda(*m.g, m.delta).value;
            c.expect(value == m.expected, std::string("lambda mismatch for ") + m.name);
            if (m.brute) {
                c.expect(*lambda_brute(*m.g, m.delta).value == value, std::string("brute disagrees on ") + m.name);
            }
            if (m.bound > 0) {
                c.expect(value >= m.bound, std::string("hierarchy bound violated for ") + m.name);
            }
            c.detail << m.name << "@" << m.delta << "=" << value << " ";
        }
    });

    criterion(4, "structural laws", 300, [&](Check& c) {
        for (const PatternGraph& g : small) {
            LambdaSolver solver(g);
            const int td = solver.treedepth();
            int previous = std::numeric_limits<int>::max();
            for (int delta = 1; delta <= g.k(); ++delta) {
                int value = *solver.solve(delta).value;
                c.expect(td <= value, "treedepth exceeds lambda");
                c.expect(value <= previous, "lambda increased with depth");
                if (delta >= td) {
                    c.expect(value == td, "lambda != treedepth past saturation");
                }
                previous = value;
            }
        }
        Rng rng(seed);
        int relabelings = 0;
        for (const PatternGraph& g : enumerate_connected_graphs(5)) {
            for (int rep = 0; rep < 3; ++rep) {
                PatternGraph h = relabel(g, testing::random_permutation(5, rng));
                for (int delta = 1; delta <= 5; ++delta) {
                    c.expect(lambda(g, delta).value == lambda(h, delta).value, "lambda changed under relabeling");
                }
                ++relabelings;
            }
        }
        c.detail << small.size() << " graphs, " << relabelings << " relabelings ";
    });

    criterion(5, "compiler exactness by expansion", 120, [](Check& c) {
        int cases = 0;
        for (const PatternGraph& g : graphs_between(3, 5)) {
            LambdaSolver solver(g);
            for (int delta = 1; delta <= 3; ++delta) {
                BaggyTree t = *solver.solve(delta).witness;
                for (std::uint32_t n : {2U, 3U}) {
                    MonomialMap<ColIsoVar> got = expand(compile(g, t, n));
                    MonomialMap<ColIsoVar> want = brute_coliso_monomials(g, n);
                    std::size_t count = 1;
                    for (int i = 0; i < g.k(); ++i) {
                        count *= n;
                    }
                    c.expect(got == want, "expansion differs from brute ColIso");
                    c.expect(got.size() == count, "monomial count != n^k");
                    for (const auto& [mono, coeff] : got) {
                        c.expect(coeff == 1, "coefficient != 1");
                    }
                    ++cases;
                }
            }
        }
        c.detail << cases << " (graph, delta, n) cases ";
    });

    const std::vector<Instance> suite = randomized_suite();
    std::map<std::string, Evaluator> coliso_oracles;
    std::map<std::string, Evaluator> hom_oracles;
    auto key_of = [](const PatternGraph& g) {
        std::ostringstream os;
        os << g.k();
        for (const Edge& e : g.edges()) {
            os << ' ' << e.u << '-' << e.v;
        }
        return os.str();
    };

    criterion(6, "randomized equivalence (PIT)", 60, [&](Check& c) {
        int caught = 0;
        for (const Instance& inst : suite) {
            const PatternGraph& g = inst.graph;
            std::string key = key_of(g);
            if (!coliso_oracles.count(key)) {
                coliso_oracles.emplace(key, memoized(coliso_oracle(g, kSuiteN)));
            }
            ColIsoSpace space{g.edge_count(), kSuiteN};
            Formula<ColIsoVar> f = compile(g, inst.tree, kSuiteN);
            PitResult r = pit_equiv(formula_evaluator(f, space), coliso_oracles.at(key), space.size(), kPitTrials, seed);
            c.expect(r.equal && r.trials == kPitTrials, "PIT mismatch on " + inst.name);
            PitResult m = pit_equiv(formula_evaluator(leaf_deletion_mutant(f), space), coliso_oracles.at(key),
                                    space.size(), kPitTrials, seed);
            c.expect(!m.equal, "leaf-deletion mutant not caught on " + inst.name);
            caught += m.equal ? 0 : 1;
        }
        c.detail << suite.size() << " instances at n=" << kSuiteN << ", " << kPitTrials << " trials each, "
                 << caught << "/" << suite.size() << " mutants caught ";
    });

    criterion(7, "Hom projection", 60, [&](Check& c) {
        for (const Instance& inst : suite) {
            const PatternGraph& g = inst.graph;
            std::string key = key_of(g);
            if (!hom_oracles.count(key)) {
                hom_oracles.emplace(key, memoized(hom_oracle(g, kSuiteN)));
            }
            HomSpace space{kSuiteN};
            Formula<HomVar> h = hom_project(compile(g, inst.tree, kSuiteN), g, kSuiteN);
            PitResult r = pit_equiv(formula_evaluator(h, space), hom_oracles.at(key), space.size(), kPitTrials, seed);
            c.expect(r.equal && r.trials == kPitTrials, "Hom PIT mismatch on " + inst.name);
        }
        auto ones = [](const HomVar&) { return Fp(1); };
        PatternGraph p3 = make_path(3);
        PatternGraph k3 = make_complete(3);
        Fp hp3 = eval_ir<Fp>(hom_project(compile(p3, *lambda(p3, 1).witness, 3), p3, 3), ones);
        Fp hk3 = eval_ir<Fp>(hom_project(compile(k3, *lambda(k3, 1).witness, 3), k3, 3), ones);
        c.expect(hp3 == Fp(12), "Hom(P3, K3) != 12");
        c.expect(hk3 == Fp(6), "Hom(K3, K3) != 6");
        c.expect(brute_hom<Fp>(p3, 3, ones) == Fp(12) && brute_hom<Fp>(k3, 3, ones) == Fp(6),
                 "brute Hom spot values");
        c.detail << suite.size() << " instances equal; Hom(P3,K3)=" << hp3 << " Hom(K3,K3)=" << hk3 << " ";
    });

    criterion(8, "lifting soundness", 60, [&](Check& c) {
        int lifted = 0;
        bool recovered = true;
        for (const Instance& inst : suite) {
            const PatternGraph& g = inst.graph;
            Formula<ColIsoVar> f = compile(g, inst.tree, kSuiteN);
            const int depth = measure(f).product_depth;
            const int floor = *lambda(g, depth).value;
            const bool is_even_root = inst.name == "path 7 even-root";
            for (int s = 0; s < kLiftSamples; ++s) {
                BaggyTree t = lift(sample_parse_tree(f, derive_seed(seed, static_cast<std::uint64_t>(s))), g);
                c.expect(!validate_tree(t, g), "lifted tree does not validate on " + inst.name);
                TreeMetrics m = metrics(t, g);
                c.expect(m.product_depth <= depth, "lifted product depth over the IR's on " + inst.name);
                c.expect(m.cost >= floor, "lifted cost below lambda on " + inst.name);
                if (is_even_root) {
                    BaggyTree::Nested n = t.to_nested();
                    bool leaves = n.children.size() == 4;
                    for (std::size_t i = 0; leaves && i < 4; ++i) {
                        leaves = n.children[i].bag == std::vector<int>{static_cast<int>(2 * i + 1)};
                    }
                    recovered = recovered && n.bag == std::vector<int>{2, 4, 6} && leaves;
                }
                ++lifted;
            }
        }
        c.expect(recovered, "lift of the even-root tree did not recover root {2,4,6} with leaves {1},{3},{5},{7}");
        c.detail << lifted << " lifts; even-root lift root {2,4,6} " << (recovered ? "recovered" : "missing") << " ";
    });

    criterion(9, "streaming vs materialized evaluation", 60, [&](Check& c) {
        std::vector<Instance> instances = suite;
        instances.push_back({"path 3", make_path(3), BaggyTree::from_nested({{2}, {{{1}, {}}, {{3}, {}}}})});
        instances.push_back({"complete 3", make_complete(3), BaggyTree::from_nested({{1, 2, 3}, {}})});
        Rng rng(seed);
        int evaluations = 0;
        for (const Instance& inst : instances) {
            const PatternGraph& g = inst.graph;
            const std::uint32_t n = inst.name == "path 3" ? 2 : kSuiteN;
            Formula<ColIsoVar> f = compile(g, inst.tree, n);
            Assignment<ColIsoSpace> a(ColIsoSpace{g.edge_count(), n}, Fp());
            for (int s = 0; s < kStreamingSamples; ++s) {
                for (Fp& x : a.values) {
                    x = uniform_field_element(rng);
                }
                c.expect(eval_streaming<Fp>(g, inst.tree, n, a) == eval_ir<Fp>(f, a),
                         "streaming differs on " + inst.name);
                ++evaluations;
            }
        }
        auto ones = [](const ColIsoVar&) { return Fp(1); };
        Fp big = eval_streaming<Fp>(make_path(7), even_root_tree(), 50, ones);
        c.expect(big == Fp(50).pow(7), "P7 at n=50 != 50^7");
        Fp k3 = eval_streaming<Fp>(make_complete(3), BaggyTree::from_nested({{1, 2, 3}, {}}), 4, ones);
        c.expect(k3 == Fp(64), "K3 at n=4 != 64");
        c.detail << evaluations << " random assignments; P7 n=50 all-ones=" << big << " ";
    });

    std::printf("acceptance: %d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
