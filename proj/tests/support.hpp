#pragma once

// Test-only helpers: random instance generators and small oracles that do
// not share code paths with the library under test.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "baggy/graph.hpp"
#include "baggy/random.hpp"
#include "baggy/tree.hpp"

namespace testing {

using namespace baggy;

inline std::vector<int> random_permutation(int k, Rng& rng) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 1);
    for (int i = k - 1; i > 0; --i) {
        std::swap(perm[i], perm[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
    }
    return perm;
}

inline VertexSet random_nonempty_subset(VertexSet c, Rng& rng) {
    std::vector<int> members = c.to_vector();
    std::uint64_t size = 1 + uniform_below(rng, members.size());
    for (std::size_t i = members.size() - 1; i > 0; --i) {
        std::swap(members[i], members[uniform_below(rng, i + 1)]);
    }
    VertexSet out;
    for (std::uint64_t i = 0; i < size; ++i) {
        out.insert(members[i]);
    }
    return out;
}

/// Random valid baggy tree: a random bag per component, then occasional
/// grafting of one child subtree below a node of a sibling subtree, which
/// keeps every edge covered because the grafted part only touches
/// ancestors of its old parent.
inline BaggyTree::Nested random_nested(const PatternGraph& g, VertexSet c, Rng& rng) {
    VertexSet bag = random_nonempty_subset(c, rng);
    BaggyTree::Nested node{bag.to_vector(), {}};
    for (VertexSet comp : components(g, c - bag)) {
        node.children.push_back(random_nested(g, comp, rng));
    }
    while (node.children.size() >= 2 && uniform_below(rng, 3) == 0) {
        BaggyTree::Nested moved = std::move(node.children.back());
        node.children.pop_back();
        BaggyTree::Nested* target = &node.children[uniform_below(rng, node.children.size())];
        while (!target->children.empty() && uniform_below(rng, 2) == 0) {
            target = &target->children[uniform_below(rng, target->children.size())];
        }
        target->children.push_back(std::move(moved));
    }
    for (std::size_t i = node.children.size(); i > 1; --i) {
        std::swap(node.children[i - 1], node.children[uniform_below(rng, i)]);
    }
    return node;
}

inline BaggyTree random_valid_tree(const PatternGraph& g, Rng& rng) {
    return BaggyTree::from_nested(random_nested(g, g.vertices(), rng));
}

struct PathOracle {
    int cost = 0;
    int product_depth = 0;
};

/// Metrics by listing every root-to-leaf path of the nested form.
inline PathOracle path_oracle(const BaggyTree::Nested& root, const PatternGraph& g) {
    PathOracle out;
    std::vector<const BaggyTree::Nested*> path;
    auto walk = [&](auto&& self, const BaggyTree::Nested& n) -> void {
        path.push_back(&n);
        if (n.children.empty()) {
            int cost = 0;
            for (const auto* p : path) {
                cost += static_cast<int>(p->bag.size());
            }
            bool core = std::any_of(n.bag.begin(), n.bag.end(), [&](int v) { return g.degree(v) >= 2; });
            int counted = static_cast<int>(path.size()) - (core ? 0 : 1);
            out.cost = std::max(out.cost, cost);
            out.product_depth = std::max(out.product_depth, counted);
        }
        for (const auto& c : n.children) {
            self(self, c);
        }
        path.pop_back();
    };
    walk(walk, root);
    return out;
}

} // namespace testing
