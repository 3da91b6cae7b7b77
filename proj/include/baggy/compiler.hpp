#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"
#include "formula.hpp"
#include "graph.hpp"
#include "tree.hpp"

namespace baggy {

using BigInt = boost::multiprecision::cpp_int;

struct CompileOptions {
    /// Refuse to materialize formulas with more edges than this.
    std::uint64_t max_size = 100'000'000;
};

namespace detail {

/// Per-node emission data for a normalized tree.
struct NodePlan {
    std::vector<int> bag;
    std::vector<int> inner_edges;    // both endpoints in the bag
    std::vector<int> ancestor_edges; // one endpoint in the bag, one above it
    std::vector<int> children;

    std::size_t factor_count() const { return inner_edges.size() + ancestor_edges.size() + children.size(); }
};

struct CompilePlan {
    BaggyTree tree;
    std::vector<NodePlan> nodes;
};

inline CompilePlan make_plan(const PatternGraph& g, const BaggyTree& t) {
    throw_if_error(validate(g));
    if (Status s = validate_tree(t, g)) {
        throw Error(Errc::InvalidTree, s->what());
    }
    CompilePlan plan{normalize_noncore(t, g), {}};
    const BaggyTree& tree = plan.tree;
    const auto above = tree.ancestor_vertices();
    plan.nodes.resize(static_cast<std::size_t>(tree.size()));
    for (int id = 0; id < tree.size(); ++id) {
        NodePlan& np = plan.nodes[id];
        VertexSet bag = tree.node(id).bag;
        np.bag = bag.to_vector();
        np.children = tree.node(id).children;
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const Edge& edge = g.edges()[e];
            bool in_u = bag.contains(edge.u);
            bool in_v = bag.contains(edge.v);
            if (in_u && in_v) {
                np.inner_edges.push_back(static_cast<int>(e));
            } else if ((in_u && above[id].contains(edge.v)) || (in_v && above[id].contains(edge.u))) {
                np.ancestor_edges.push_back(static_cast<int>(e));
            }
        }
    }
    return plan;
}

inline BigInt node_size(const CompilePlan& plan, int id, std::uint64_t n) {
    const NodePlan& np = plan.nodes[id];
    BigInt inner = np.factor_count() >= 2 ? BigInt(np.factor_count()) : BigInt(0);
    for (int child : np.children) {
        inner += node_size(plan, child, n);
    }
    return boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(np.bag.size())) * (1 + inner);
}

class Emitter {
public:
    Emitter(const PatternGraph& g, const CompilePlan& plan, std::uint32_t n)
        : g_(g), plan_(plan), n_(n), value_(static_cast<std::size_t>(g.k()) + 1, 0) {}

    std::vector<Gate<ColIsoVar>> run(std::size_t expected) {
        gates_.reserve(expected);
        emit(plan_.tree.root());
        return std::move(gates_);
    }

private:
    void emit(int id) {
        const NodePlan& np = plan_.nodes[id];
        std::uint64_t assignments = 1;
        for (std::size_t i = 0; i < np.bag.size(); ++i) {
            assignments *= n_;
        }
        gates_.push_back({GateKind::Sum, static_cast<std::uint32_t>(assignments), {}, {}});
        for (int v : np.bag) {
            value_[v] = 1;
        }
        const std::size_t factors = np.factor_count();
        for (std::uint64_t a = 0; a < assignments; ++a) {
            if (factors == 0) {
                gates_.push_back({GateKind::Const, 0, {}, {1, 1}});
            } else if (factors >= 2) {
                gates_.push_back({GateKind::Product, static_cast<std::uint32_t>(factors), {}, {}});
            }
            for (int e : np.inner_edges) {
                push_var(e);
            }
            for (int e : np.ancestor_edges) {
                push_var(e);
            }
            for (int child : np.children) {
                emit(child);
            }
            // Odometer step, last bag vertex fastest.
            for (auto it = np.bag.rbegin(); it != np.bag.rend(); ++it) {
                if (value_[*it] < n_) {
                    ++value_[*it];
                    break;
                }
                value_[*it] = 1;
            }
        }
        for (int v : np.bag) {
            value_[v] = 0;
        }
    }

    void push_var(int e) {
        const Edge& edge = g_.edges()[e];
        ColIsoVar x{static_cast<std::uint32_t>(e), value_[edge.u], value_[edge.v]};
        gates_.push_back({GateKind::Var, 0, x, {}});
    }

    const PatternGraph& g_;
    const CompilePlan& plan_;
    std::uint32_t n_;
    std::vector<std::uint32_t> value_;
    std::vector<Gate<ColIsoVar>> gates_;
};

} // namespace detail

/// Exact edge count of compile(g, t, n), without building the formula.
inline BigInt predicted_size(const PatternGraph& g, const BaggyTree& t, std::uint64_t n) {
    if (n < 1) {
        throw Error(Errc::Malformed, "host size must be >= 1");
    }
    detail::CompilePlan plan = detail::make_plan(g, t);
    return detail::node_size(plan, plan.tree.root(), n);
}

/// Monotone formula for ColIso_{H,n} following the tree: every node sums
/// over all assignments of its bag, and each summand multiplies the
/// variables of edges inside the bag, the variables of edges to ancestor
/// bags, and the formulas of the child nodes. One-factor summands are
/// emitted without a Product gate; the tree is normalized first so that
/// non-core leaves are pendant singletons.
inline Formula<ColIsoVar> compile(const PatternGraph& g, const BaggyTree& t, std::uint32_t n,
                                  CompileOptions options = {}) {
    if (n < 1) {
        throw Error(Errc::Malformed, "host size must be >= 1");
    }
    detail::CompilePlan plan = detail::make_plan(g, t);
    BigInt size = detail::node_size(plan, plan.tree.root(), n);
    if (size > options.max_size) {
        throw Error(Errc::SizeLimit, "formula would have " + size.str() + " edges, cap is " +
                                         std::to_string(options.max_size));
    }
    auto gates = detail::Emitter(g, plan, n).run(static_cast<std::size_t>(size) + 1);
    return Formula<ColIsoVar>(std::move(gates));
}

/// Rewrites a ColIso formula into one for Hom_{H,n}: x_{(i,u),(j,v)} becomes
/// 0 when u == v and y_{{u,v}} otherwise.
inline Formula<HomVar> hom_project(const Formula<ColIsoVar>& f, const PatternGraph& g, std::uint32_t n) {
    std::vector<Gate<HomVar>> out;
    out.reserve(f.gate_count());
    for (const auto& gate : f.gates()) {
        Gate<HomVar> h{gate.kind, gate.arity, {}, gate.constant};
        if (gate.kind == GateKind::Var) {
            const ColIsoVar& x = gate.var;
            if (x.edge >= g.edge_count() || x.u < 1 || x.v < 1 || x.u > n || x.v > n) {
                throw Error(Errc::Malformed, "variable outside the ColIso universe");
            }
            if (x.u == x.v) {
                h.kind = GateKind::Const;
                h.constant = {0, 1};
            } else {
                h.var = {std::min(x.u, x.v), std::max(x.u, x.v)};
            }
        }
        out.push_back(h);
    }
    return Formula<HomVar>(std::move(out));
}

} // namespace baggy
