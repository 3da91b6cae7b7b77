#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "tree.hpp"

namespace baggy {

struct SolverOptions {
    /// Largest pattern the exact search accepts.
    int max_vertices = 20;
};

struct SolverStats {
    std::size_t memo_entries = 0;
    std::size_t subproblems = 0;
};

struct LambdaResult {
    std::optional<int> value;
    std::optional<BaggyTree> witness;
    SolverStats stats;

    bool feasible() const { return value.has_value(); }
};

/// Exact minimum cost of a baggy elimination tree under a product-depth
/// budget.
///
/// rec(C, d) is the cheapest tree for the connected vertex set C using at
/// most d counted levels: a pendant singleton costs 1 at any budget,
/// otherwise a root bag S is chosen and every component of C - S is solved
/// with budget d - 1. Root bags are tried by increasing size and then in
/// lexicographic order, and only strict improvements replace the incumbent,
/// so the witness is the smallest, lexicographically first optimal bag at
/// every node.
class LambdaSolver {
public:
    explicit LambdaSolver(const PatternGraph& g, SolverOptions options = {}) : g_(g), options_(options) {
        throw_if_error(validate(g_));
        if (g_.k() > options_.max_vertices) {
            throw Error(Errc::TooLarge, "pattern has " + std::to_string(g_.k()) + " vertices, cap is " +
                                            std::to_string(options_.max_vertices));
        }
        pendants_ = pendant_vertices(g_);
    }

    LambdaResult solve(int delta) {
        if (delta < 0) {
            throw Error(Errc::Malformed, "product depth budget must be non-negative");
        }
        LambdaResult result;
        int value = rec(g_.vertices(), delta);
        if (value < kInfeasible) {
            result.value = value;
            result.witness = BaggyTree::from_nested(build(g_.vertices(), delta));
        }
        result.stats = stats();
        return result;
    }

    /// Singleton bags with no depth budget.
    int treedepth() { return td(g_.vertices()); }

    SolverStats stats() const { return {memo_.size() + td_memo_.size(), expanded_}; }

private:
    static constexpr int kInfeasible = std::numeric_limits<int>::max() / 2;

    struct Key {
        std::uint64_t set;
        int budget;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::uint64_t h = k.set * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(k.budget);
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };
    struct Entry {
        int value;
        VertexSet bag;
    };

    bool pendant_singleton(VertexSet c) const { return c.size() == 1 && pendants_.contains(c.min()); }

    int rec(VertexSet c, int d) {
        d = std::min(d, c.size());
        if (pendant_singleton(c)) {
            return 1;
        }
        if (d == 0) {
            return kInfeasible;
        }
        if (auto it = memo_.find({c.bits(), d}); it != memo_.end()) {
            return it->second.value;
        }
        ++expanded_;
        // With d == |C| every tree shape is available, so the floor is exact.
        const int floor = d < c.size() ? td(c) : 1;
        const std::vector<int> members = c.to_vector();
        const int size = static_cast<int>(members.size());
        int best = kInfeasible;
        VertexSet best_bag;
        std::vector<int> idx;
        for (int s = 1; s <= size && s < best && best > floor; ++s) {
            idx.resize(static_cast<std::size_t>(s));
            for (int i = 0; i < s; ++i) {
                idx[i] = i;
            }
            while (true) {
                VertexSet bag;
                for (int i : idx) {
                    bag.insert(members[i]);
                }
                int value = s;
                for (VertexSet comp : components(g_, c - bag)) {
                    int sub = rec(comp, d - 1);
                    value = std::max(value, s + sub);
                    if (value >= best) {
                        break;
                    }
                }
                if (value < best) {
                    best = value;
                    best_bag = bag;
                    if (best <= floor) {
                        break;
                    }
                }
                int i = s - 1;
                while (i >= 0 && idx[i] == size - s + i) {
                    --i;
                }
                if (i < 0) {
                    break;
                }
                ++idx[i];
                for (int j = i + 1; j < s; ++j) {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        memo_.emplace(Key{c.bits(), d}, Entry{best, best_bag});
        return best;
    }

    BaggyTree::Nested build(VertexSet c, int d) {
        d = std::min(d, c.size());
        if (pendant_singleton(c)) {
            return {{c.min()}, {}};
        }
        const Entry& entry = memo_.at({c.bits(), d});
        BaggyTree::Nested node{entry.bag.to_vector(), {}};
        for (VertexSet comp : components(g_, c - entry.bag)) {
            node.children.push_back(build(comp, d - 1));
        }
        return node;
    }

    int td(VertexSet c) {
        if (c.size() == 1) {
            return 1;
        }
        if (auto it = td_memo_.find(c.bits()); it != td_memo_.end()) {
            return it->second;
        }
        int best = c.size();
        for (int v : c) {
            int deepest = 0;
            for (VertexSet comp : components(g_, c - VertexSet::single(v))) {
                deepest = std::max(deepest, td(comp));
                if (1 + deepest >= best) {
                    break;
                }
            }
            best = std::min(best, 1 + deepest);
        }
        td_memo_.emplace(c.bits(), best);
        return best;
    }

    PatternGraph g_;
    SolverOptions options_;
    VertexSet pendants_;
    std::unordered_map<Key, Entry, KeyHash> memo_;
    std::unordered_map<std::uint64_t, int> td_memo_;
    std::size_t expanded_ = 0;
};

inline LambdaResult lambda(const PatternGraph& g, int delta, SolverOptions options = {}) {
    return LambdaSolver(g, options).solve(delta);
}

inline int treedepth(const PatternGraph& g, SolverOptions options = {}) {
    return LambdaSolver(g, options).treedepth();
}

/// Minimum cost per exact product depth, found by listing every partition
/// of V(H) into bags and every rooted tree over the bags. Only
/// validate_tree() and metrics() decide what counts.
class BruteForceLambda {
public:
    static constexpr int kMaxVertices = 7;

    explicit BruteForceLambda(const PatternGraph& g) : g_(g) {
        if (g_.k() > kMaxVertices) {
            throw Error(Errc::TooLarge, "brute-force enumeration supports at most 7 vertices");
        }
        enumerate();
    }

    LambdaResult solve(int delta) const {
        LambdaResult result;
        for (int pd = 0; pd <= delta && pd < static_cast<int>(best_.size()); ++pd) {
            if (best_[pd] && (!result.value || best_[pd]->cost < *result.value)) {
                result.value = best_[pd]->cost;
                result.witness = best_[pd]->tree;
            }
        }
        result.stats.subproblems = trees_checked_;
        return result;
    }

    std::size_t trees_checked() const { return trees_checked_; }

private:
    struct Best {
        int cost;
        BaggyTree tree;
    };

    void enumerate() {
        const int k = g_.k();
        best_.resize(static_cast<std::size_t>(k) + 1);
        std::vector<int> block(static_cast<std::size_t>(k), 0);
        // Restricted growth strings: block[i] <= 1 + max(block[0..i-1]).
        auto partitions = [&](auto&& self, int i, int blocks) -> void {
            if (i == k) {
                std::vector<VertexSet> bags(static_cast<std::size_t>(blocks));
                for (int v = 0; v < k; ++v) {
                    bags[block[v]].insert(v + 1);
                }
                trees_over(bags);
                return;
            }
            for (int b = 0; b <= blocks; ++b) {
                block[i] = b;
                self(self, i + 1, std::max(blocks, b + 1));
            }
        };
        partitions(partitions, 0, 0);
    }

    void trees_over(const std::vector<VertexSet>& bags) {
        const int m = static_cast<int>(bags.size());
        std::vector<int> parent(static_cast<std::size_t>(m), -1);
        auto assign = [&](auto&& self, int i, int roots) -> void {
            if (i == m) {
                if (roots == 1 && acyclic(parent)) {
                    consider(BaggyTree::from_parents(bags, parent));
                }
                return;
            }
            for (int p = -1; p < m; ++p) {
                if (p == i || (p < 0 && roots == 1)) {
                    continue;
                }
                parent[i] = p;
                self(self, i + 1, roots + (p < 0 ? 1 : 0));
            }
        };
        assign(assign, 0, 0);
    }

    static bool acyclic(const std::vector<int>& parent) {
        const int m = static_cast<int>(parent.size());
        for (int i = 0; i < m; ++i) {
            int cur = i;
            for (int steps = 0; cur >= 0; ++steps) {
                if (steps > m) {
                    return false;
                }
                cur = parent[cur];
            }
        }
        return true;
    }

    void consider(BaggyTree tree) {
        ++trees_checked_;
        if (validate_tree(tree, g_)) {
            return;
        }
        TreeMetrics m = metrics(tree, g_);
        auto& slot = best_[m.product_depth];
        if (!slot || m.cost < slot->cost) {
            slot = Best{m.cost, std::move(tree)};
        }
    }

    PatternGraph g_;
    std::vector<std::optional<Best>> best_;
    std::size_t trees_checked_ = 0;
};

inline LambdaResult lambda_brute(const PatternGraph& g, int delta) {
    return BruteForceLambda(g).solve(delta);
}

} // namespace baggy
