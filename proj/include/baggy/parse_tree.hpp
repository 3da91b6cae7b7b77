#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "formula.hpp"
#include "graph.hpp"
#include "random.hpp"
#include "tree.hpp"

namespace baggy {

/// A parse tree with its Sum gates contracted away: every node is a
/// Product gate or a leaf gate of the formula, attached to its nearest
/// non-Sum ancestor. Node 0 is the root and nodes are in preorder.
template <class Var>
struct ParseTree {
    struct Node {
        std::size_t gate = 0;
        GateKind kind = GateKind::Const;
        Var var{};
        Rational constant{};
        int parent = -1;
        std::vector<int> children;
    };

    std::vector<Node> nodes;

    /// Variables at the leaves, sorted.
    std::vector<Var> monomial() const {
        std::vector<Var> out;
        for (const Node& n : nodes) {
            if (n.kind == GateKind::Var) {
                out.push_back(n.var);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

/// Picks one child uniformly at every Sum gate and all children at every
/// Product gate. Attempts that reach a Const 0 leaf are redrawn.
template <class Var>
ParseTree<Var> sample_parse_tree(const Formula<Var>& f, std::uint64_t seed, int max_attempts = 1000) {
    if (f.gate_count() == 1 && f.gate(0).kind == GateKind::Const) {
        throw Error(Errc::Degenerate, "formula is a single constant");
    }
    Rng rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        ParseTree<Var> pt;
        bool hit_zero = false;
        std::vector<std::pair<std::size_t, int>> stack{{0, -1}};
        while (!stack.empty() && !hit_zero) {
            auto [gate, parent] = stack.back();
            stack.pop_back();
            while (f.gate(gate).kind == GateKind::Sum) {
                std::uint64_t pick = uniform_below(rng, f.gate(gate).arity);
                std::size_t child = gate + 1;
                for (std::uint64_t i = 0; i < pick; ++i) {
                    child = f.subtree_end(child);
                }
                gate = child;
            }
            const auto& g = f.gate(gate);
            if (g.kind == GateKind::Const && g.constant.num == 0) {
                hit_zero = true;
                break;
            }
            int id = static_cast<int>(pt.nodes.size());
            pt.nodes.push_back({gate, g.kind, g.var, g.constant, parent, {}});
            if (parent >= 0) {
                pt.nodes[parent].children.push_back(id);
            }
            if (g.kind == GateKind::Product) {
                auto kids = f.children(gate);
                for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
                    stack.emplace_back(*it, id);
                }
            }
        }
        if (!hit_zero) {
            return pt;
        }
    }
    throw Error(Errc::Degenerate, "every sampled parse tree hit a zero constant");
}

/// Builds a baggy elimination tree from a parse tree of a ColIso monomial:
/// vertex i goes to the lowest common ancestor of the leaves whose
/// variable mentions color i. Empty non-root nodes are dropped (children
/// move up) and an empty root with one child is replaced by that child.
inline BaggyTree lift(const ParseTree<ColIsoVar>& pt, const PatternGraph& g) {
    const int size = static_cast<int>(pt.nodes.size());
    if (size == 0) {
        throw Error(Errc::Degenerate, "empty parse tree");
    }
    std::vector<int> depth(static_cast<std::size_t>(size), 0);
    for (int id = 1; id < size; ++id) {
        depth[id] = depth[pt.nodes[id].parent] + 1;
    }
    auto lca = [&](int a, int b) {
        while (depth[a] > depth[b]) {
            a = pt.nodes[a].parent;
        }
        while (depth[b] > depth[a]) {
            b = pt.nodes[b].parent;
        }
        while (a != b) {
            a = pt.nodes[a].parent;
            b = pt.nodes[b].parent;
        }
        return a;
    };

    const int k = g.k();
    std::vector<std::uint32_t> host(static_cast<std::size_t>(k) + 1, 0);
    std::vector<int> owner(static_cast<std::size_t>(k) + 1, -1);
    auto mention = [&](int color, std::uint32_t value, int node) {
        if (host[color] != 0 && host[color] != value) {
            throw Error(Errc::InconsistentMonomial, "color " + std::to_string(color) + " takes host values " +
                                                        std::to_string(host[color]) + " and " +
                                                        std::to_string(value));
        }
        host[color] = value;
        owner[color] = owner[color] < 0 ? node : lca(owner[color], node);
    };
    for (int id = 0; id < size; ++id) {
        const auto& n = pt.nodes[id];
        if (n.kind != GateKind::Var) {
            continue;
        }
        if (n.var.edge >= g.edge_count()) {
            throw Error(Errc::Malformed, "variable refers to a missing edge");
        }
        const Edge& e = g.edges()[n.var.edge];
        mention(e.u, n.var.u, id);
        mention(e.v, n.var.v, id);
    }

    std::vector<VertexSet> bag(static_cast<std::size_t>(size));
    for (int v = 1; v <= k; ++v) {
        if (owner[v] < 0) {
            throw Error(Errc::InconsistentMonomial, "color " + std::to_string(v) + " never appears");
        }
        bag[owner[v]].insert(v);
    }

    // Nearest kept ancestor; nodes are in preorder so parents come first.
    std::vector<int> kept_parent(static_cast<std::size_t>(size), -1);
    std::vector<int> new_id(static_cast<std::size_t>(size), -1);
    std::vector<VertexSet> bags;
    std::vector<int> parents;
    for (int id = 0; id < size; ++id) {
        int p = pt.nodes[id].parent;
        int up = p < 0 ? -1 : (new_id[p] >= 0 ? p : kept_parent[p]);
        kept_parent[id] = up;
        if (id != 0 && bag[id].empty()) {
            continue;
        }
        new_id[id] = static_cast<int>(bags.size());
        bags.push_back(bag[id]);
        parents.push_back(up < 0 ? -1 : new_id[up]);
    }
    if (bags[0].empty()) {
        int root_children = static_cast<int>(std::count(parents.begin(), parents.end(), 0));
        if (root_children != 1) {
            throw Error(Errc::InvalidTree, "empty root with " + std::to_string(root_children) + " children");
        }
        bags.erase(bags.begin());
        parents.erase(parents.begin());
        for (int& p : parents) {
            p = p <= 0 ? -1 : p - 1;
        }
    }
    return BaggyTree::from_parents(std::move(bags), parents);
}

} // namespace baggy
