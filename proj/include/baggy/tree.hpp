#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "vertex_set.hpp"

namespace baggy {

struct TreeNode {
    VertexSet bag;
    int parent = -1;
    std::vector<int> children;
};

/// Rooted tree of vertex bags. Construction accepts any parent array so
/// that malformed input can be reported by validate_tree().
class BaggyTree {
public:
    /// Literal form used by the nested JSON layout and in tests.
    struct Nested {
        std::vector<int> bag;
        std::vector<Nested> children;

        bool operator==(const Nested&) const = default;
    };

    BaggyTree() = default;

    static BaggyTree from_parents(std::vector<VertexSet> bags, const std::vector<int>& parents) {
        if (bags.size() != parents.size()) {
            throw Error(Errc::Malformed, "bag and parent arrays differ in length");
        }
        BaggyTree t;
        const int n = static_cast<int>(bags.size());
        t.nodes_.resize(bags.size());
        int roots = 0;
        for (int i = 0; i < n; ++i) {
            t.nodes_[i].bag = bags[i];
            t.nodes_[i].parent = parents[i];
            if (parents[i] < 0) {
                t.root_ = i;
                ++roots;
            } else if (parents[i] < n && parents[i] != i) {
                t.nodes_[parents[i]].children.push_back(i);
            } else {
                t.well_formed_ = false;
            }
        }
        if (roots != 1) {
            t.root_ = -1;
            t.well_formed_ = false;
        }
        if (t.well_formed_) {
            t.well_formed_ = static_cast<int>(t.preorder().size()) == n;
        }
        return t;
    }

    /// Nodes are numbered in preorder.
    static BaggyTree from_nested(const Nested& root) {
        std::vector<VertexSet> bags;
        std::vector<int> parents;
        append_nested(root, -1, bags, parents);
        return from_parents(std::move(bags), parents);
    }

    Nested to_nested() const { return to_nested(root_); }

    int size() const { return static_cast<int>(nodes_.size()); }
    int root() const { return root_; }
    const TreeNode& node(int id) const { return nodes_[id]; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    bool is_leaf(int id) const { return nodes_[id].children.empty(); }

    /// Single root, no cycles, every node reachable from the root.
    bool well_formed() const { return well_formed_ && root_ >= 0; }

    /// Preorder node ids reachable from the root.
    std::vector<int> preorder() const {
        std::vector<int> order;
        if (root_ < 0) {
            return order;
        }
        std::vector<int> stack{root_};
        std::vector<bool> visited(nodes_.size(), false);
        while (!stack.empty()) {
            int id = stack.back();
            stack.pop_back();
            if (visited[id]) {
                continue;
            }
            visited[id] = true;
            order.push_back(id);
            const auto& ch = nodes_[id].children;
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
                stack.push_back(*it);
            }
        }
        return order;
    }

    std::vector<int> depths() const {
        std::vector<int> depth(nodes_.size(), 0);
        for (int id : preorder()) {
            if (nodes_[id].parent >= 0) {
                depth[id] = depth[nodes_[id].parent] + 1;
            }
        }
        return depth;
    }

    /// Union of all bags in the subtree below (and including) each node.
    std::vector<VertexSet> subtree_vertices() const {
        std::vector<VertexSet> out(nodes_.size());
        auto order = preorder();
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            out[*it] |= nodes_[*it].bag;
            if (nodes_[*it].parent >= 0) {
                out[nodes_[*it].parent] |= out[*it];
            }
        }
        return out;
    }

    /// Union of the bags of the proper ancestors of each node.
    std::vector<VertexSet> ancestor_vertices() const {
        std::vector<VertexSet> out(nodes_.size());
        for (int id : preorder()) {
            int p = nodes_[id].parent;
            if (p >= 0) {
                out[id] = out[p] | nodes_[p].bag;
            }
        }
        return out;
    }

    bool is_ancestor(int ancestor, int id) const {
        for (int cur = nodes_[id].parent; cur >= 0; cur = nodes_[cur].parent) {
            if (cur == ancestor) {
                return true;
            }
        }
        return false;
    }

private:
    static void append_nested(const Nested& n, int parent, std::vector<VertexSet>& bags, std::vector<int>& parents) {
        int id = static_cast<int>(bags.size());
        bags.push_back(VertexSet::from_vector(n.bag));
        parents.push_back(parent);
        for (const Nested& child : n.children) {
            append_nested(child, id, bags, parents);
        }
    }

    Nested to_nested(int id) const {
        Nested n;
        n.bag = nodes_[id].bag.to_vector();
        for (int child : nodes_[id].children) {
            n.children.push_back(to_nested(child));
        }
        return n;
    }

    std::vector<TreeNode> nodes_;
    int root_ = -1;
    bool well_formed_ = true;
};

/// Structural invariants plus edge coverage: both endpoints of every edge
/// share a bag or sit in bags related as ancestor and descendant.
inline Status validate_tree(const BaggyTree& t, const PatternGraph& g) {
    if (t.size() == 0 || !t.well_formed()) {
        return Error(Errc::NotTree, "parent links do not form a single rooted tree");
    }
    for (int id = 0; id < t.size(); ++id) {
        if (t.node(id).bag.empty()) {
            return Error(Errc::EmptyBag, "node " + std::to_string(id) + " has an empty bag");
        }
    }
    std::vector<int> owner(static_cast<std::size_t>(g.k()) + 1, -1);
    VertexSet seen;
    for (int id = 0; id < t.size(); ++id) {
        VertexSet bag = t.node(id).bag;
        if (!bag.subset_of(g.vertices())) {
            return Error(Errc::NotPartition, "bag holds a vertex outside 1.." + std::to_string(g.k()));
        }
        if (bag.intersects(seen)) {
            return Error(Errc::NotPartition, "vertex " + std::to_string((bag & seen).min()) + " is in two bags");
        }
        seen |= bag;
        for (int v : bag) {
            owner[v] = id;
        }
    }
    if (seen != g.vertices()) {
        return Error(Errc::NotPartition, "vertex " + std::to_string((g.vertices() - seen).min()) + " is in no bag");
    }
    for (const Edge& e : g.edges()) {
        int a = owner[e.u];
        int b = owner[e.v];
        if (a != b && !t.is_ancestor(a, b) && !t.is_ancestor(b, a)) {
            return Error(Errc::EdgeUncovered,
                         "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} joins unrelated bags", e);
        }
    }
    return std::nullopt;
}

struct TreeMetrics {
    int cost = 0;
    int product_depth = 0;
    std::vector<int> core_leaves;
};

/// A leaf is core when its bag holds a vertex of degree >= 2 in g.
inline bool is_core_leaf(const BaggyTree& t, int id, const PatternGraph& g) {
    return t.is_leaf(id) && !t.node(id).bag.subset_of(pendant_vertices(g));
}

/// Cost is the heaviest root-to-leaf bag total; product depth counts the
/// nodes on a root-to-leaf path, not counting a non-core leaf at its end.
inline TreeMetrics metrics(const BaggyTree& t, const PatternGraph& g) {
    TreeMetrics m;
    const VertexSet pendants = pendant_vertices(g);
    std::vector<int> path_cost(static_cast<std::size_t>(t.size()), 0);
    std::vector<int> path_nodes(static_cast<std::size_t>(t.size()), 0);
    for (int id : t.preorder()) {
        const TreeNode& node = t.node(id);
        int parent_cost = node.parent >= 0 ? path_cost[node.parent] : 0;
        int parent_nodes = node.parent >= 0 ? path_nodes[node.parent] : 0;
        path_cost[id] = parent_cost + node.bag.size();
        path_nodes[id] = parent_nodes + 1;
        if (!node.children.empty()) {
            continue;
        }
        bool core = !node.bag.subset_of(pendants);
        if (core) {
            m.core_leaves.push_back(id);
        }
        m.cost = std::max(m.cost, path_cost[id]);
        m.product_depth = std::max(m.product_depth, core ? path_nodes[id] : parent_nodes);
    }
    std::sort(m.core_leaves.begin(), m.core_leaves.end());
    return m;
}

/// Splits every leaf made only of pendant vertices into singleton sibling
/// leaves. Output nodes are renumbered in preorder.
inline BaggyTree normalize_noncore(const BaggyTree& t, const PatternGraph& g) {
    if (!t.well_formed()) {
        throw Error(Errc::InvalidTree, "cannot normalize a malformed tree");
    }
    const VertexSet pendants = pendant_vertices(g);
    auto rewrite = [&](auto&& self, const BaggyTree::Nested& n) -> BaggyTree::Nested {
        BaggyTree::Nested out{n.bag, {}};
        for (const auto& child : n.children) {
            bool split = child.children.empty() && child.bag.size() >= 2 &&
                         VertexSet::from_vector(child.bag).subset_of(pendants);
            if (split) {
                for (int v : child.bag) {
                    out.children.push_back({{v}, {}});
                }
            } else {
                out.children.push_back(self(self, child));
            }
        }
        return out;
    };
    return BaggyTree::from_nested(rewrite(rewrite, t.to_nested()));
}

/// Replaces each bag of size m by a chain of m singleton nodes in ascending
/// label order; the original children hang below the last one.
inline BaggyTree to_elimination_tree(const BaggyTree& t) {
    if (!t.well_formed()) {
        throw Error(Errc::InvalidTree, "cannot convert a malformed tree");
    }
    auto rewrite = [](auto&& self, const BaggyTree::Nested& n) -> BaggyTree::Nested {
        if (n.bag.empty()) {
            throw Error(Errc::InvalidTree, "cannot convert a tree with an empty bag");
        }
        BaggyTree::Nested tail{{n.bag.back()}, {}};
        for (const auto& child : n.children) {
            tail.children.push_back(self(self, child));
        }
        for (auto it = std::next(n.bag.rbegin()); it != n.bag.rend(); ++it) {
            BaggyTree::Nested up{{*it}, {}};
            up.children.push_back(std::move(tail));
            tail = std::move(up);
        }
        return tail;
    };
    return BaggyTree::from_nested(rewrite(rewrite, t.to_nested()));
}

} // namespace baggy
