#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "error.hpp"
#include "vertex_set.hpp"

namespace baggy {

/// Simple undirected pattern graph on vertices 1..k.
///
/// Edges are kept normalized (u < v) and sorted lexicographically; the
/// position of an edge in edges() is its edge index everywhere else.
class PatternGraph {
public:
    PatternGraph() = default;

    /// Throws Malformed on self-loops, duplicates, or out-of-range endpoints.
    PatternGraph(int k, std::vector<Edge> edges) : k_(k) {
        if (k < 1 || k > VertexSet::kMaxVertices) {
            throw Error(Errc::Malformed, "vertex count " + std::to_string(k) + " outside 1..64");
        }
        for (Edge& e : edges) {
            if (e.u == e.v) {
                throw Error(Errc::Malformed, "self-loop at vertex " + std::to_string(e.u));
            }
            if (e.u > e.v) {
                std::swap(e.u, e.v);
            }
            if (e.u < 1 || e.v > k) {
                throw Error(Errc::Malformed, "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                                 "} out of range");
            }
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
            throw Error(Errc::Malformed, "duplicate edge");
        }
        edges_ = std::move(edges);
        adjacency_.assign(static_cast<std::size_t>(k) + 1, VertexSet{});
        for (const Edge& e : edges_) {
            adjacency_[e.u].insert(e.v);
            adjacency_[e.v].insert(e.u);
        }
    }

    int k() const { return k_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    VertexSet vertices() const { return VertexSet::range(k_); }
    VertexSet neighbors(int v) const { return adjacency_[v]; }
    int degree(int v) const { return adjacency_[v].size(); }
    bool has_edge(int u, int v) const { return adjacency_[u].contains(v); }

    /// Index of edge {u, v} in edges(), or -1.
    int edge_index(int u, int v) const {
        if (u > v) {
            std::swap(u, v);
        }
        auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
        if (it == edges_.end() || *it != Edge{u, v}) {
            return -1;
        }
        return static_cast<int>(it - edges_.begin());
    }

    bool operator==(const PatternGraph& other) const { return k_ == other.k_ && edges_ == other.edges_; }

private:
    int k_ = 0;
    std::vector<Edge> edges_;
    std::vector<VertexSet> adjacency_;
};

/// Connected components of the subgraph induced by `within`, ordered by
/// ascending minimum vertex.
inline std::vector<VertexSet> components(const PatternGraph& g, VertexSet within) {
    std::vector<VertexSet> out;
    VertexSet rest = within & g.vertices();
    while (!rest.empty()) {
        VertexSet comp = VertexSet::single(rest.min());
        VertexSet frontier = comp;
        while (!frontier.empty()) {
            VertexSet next;
            for (int v : frontier) {
                next |= g.neighbors(v);
            }
            next = (next & rest) - comp;
            comp |= next;
            frontier = next;
        }
        out.push_back(comp);
        rest -= comp;
    }
    return out;
}

inline bool is_connected(const PatternGraph& g) { return components(g, g.vertices()).size() == 1; }

/// Admissible patterns have at least two edges and are connected.
inline Status validate(const PatternGraph& g) {
    if (g.edge_count() < 2) {
        return Error(Errc::TooFewEdges, "pattern needs at least two edges, has " + std::to_string(g.edge_count()));
    }
    if (!is_connected(g)) {
        return Error(Errc::Disconnected, "pattern graph is not connected");
    }
    return std::nullopt;
}

inline VertexSet pendant_vertices(const PatternGraph& g) {
    VertexSet out;
    for (int v = 1; v <= g.k(); ++v) {
        if (g.degree(v) == 1) {
            out.insert(v);
        }
    }
    return out;
}

/// Relabels vertex i as perm[i - 1]; perm must be a bijection on 1..k.
inline PatternGraph relabel(const PatternGraph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.k()) {
        throw Error(Errc::Malformed, "permutation has wrong length");
    }
    VertexSet seen;
    for (int image : perm) {
        if (image < 1 || image > g.k() || seen.contains(image)) {
            throw Error(Errc::Malformed, "permutation is not a bijection");
        }
        seen.insert(image);
    }
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        edges.push_back({perm[e.u - 1], perm[e.v - 1]});
    }
    return PatternGraph(g.k(), std::move(edges));
}

} // namespace baggy
