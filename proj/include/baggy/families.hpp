#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "graph.hpp"

namespace baggy {

namespace detail {

inline PatternGraph admissible(PatternGraph g) {
    throw_if_error(validate(g));
    return g;
}

inline void require_positive(std::initializer_list<int> params) {
    for (int p : params) {
        if (p < 1) {
            throw Error(Errc::Malformed, "family parameters must be >= 1");
        }
    }
}

} // namespace detail

/// Path 1 - 2 - ... - n.
inline PatternGraph make_path(int n) {
    detail::require_positive({n});
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) {
        edges.push_back({i, i + 1});
    }
    return detail::admissible(PatternGraph(n, std::move(edges)));
}

/// Path plus the closing edge {1, n}.
inline PatternGraph make_cycle(int n) {
    detail::require_positive({n});
    if (n < 3) {
        throw Error(Errc::TooFewEdges, "cycle needs at least 3 vertices");
    }
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) {
        edges.push_back({i, i + 1});
    }
    edges.push_back({1, n});
    return detail::admissible(PatternGraph(n, std::move(edges)));
}

/// K_{1,n}: center 1, leaves 2..n+1.
inline PatternGraph make_star(int n) {
    detail::require_positive({n});
    std::vector<Edge> edges;
    for (int leaf = 2; leaf <= n + 1; ++leaf) {
        edges.push_back({1, leaf});
    }
    return detail::admissible(PatternGraph(n + 1, std::move(edges)));
}

inline PatternGraph make_complete(int n) {
    detail::require_positive({n});
    std::vector<Edge> edges;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            edges.push_back({i, j});
        }
    }
    return detail::admissible(PatternGraph(n, std::move(edges)));
}

/// rows x cols grid; cell (r, c), both 1-based, is vertex (r - 1) * cols + c.
inline PatternGraph make_grid(int rows, int cols) {
    detail::require_positive({rows, cols});
    if (rows * cols > VertexSet::kMaxVertices) {
        throw Error(Errc::TooLarge, "grid exceeds 64 vertices");
    }
    auto id = [cols](int r, int c) { return (r - 1) * cols + c; };
    std::vector<Edge> edges;
    for (int r = 1; r <= rows; ++r) {
        for (int c = 1; c <= cols; ++c) {
            if (c < cols) {
                edges.push_back({id(r, c), id(r, c + 1)});
            }
            if (r < rows) {
                edges.push_back({id(r, c), id(r + 1, c)});
            }
        }
    }
    return detail::admissible(PatternGraph(rows * cols, std::move(edges)));
}

/// Full b-ary tree with `depth` levels. Vertices are numbered level by
/// level: the root is 1 and the children of v are b(v-1)+2 .. b(v-1)+b+1.
inline PatternGraph make_full_bary(int b, int depth) {
    detail::require_positive({b, depth});
    long long count = 0;
    long long level = 1;
    for (int d = 0; d < depth; ++d) {
        count += level;
        level *= b;
        if (count > VertexSet::kMaxVertices) {
            throw Error(Errc::TooLarge, "full b-ary tree exceeds 64 vertices");
        }
    }
    const int k = static_cast<int>(count);
    std::vector<Edge> edges;
    for (int child = 2; child <= k; ++child) {
        edges.push_back({(child - 2) / b + 1, child});
    }
    return detail::admissible(PatternGraph(k, std::move(edges)));
}

/// A named family instance such as {"full_bary", {2, 3}}.
struct FamilySpec {
    std::string name;
    std::vector<int> params;

    std::string label() const {
        std::ostringstream os;
        os << name;
        for (int p : params) {
            os << ' ' << p;
        }
        return os.str();
    }

    /// Parses "grid 2 3", "path 7" (also accepts "grid 2x3").
    static FamilySpec parse(const std::string& text) {
        std::string normalized = text;
        for (std::size_t i = 1; i < normalized.size(); ++i) {
            bool digit_before = std::isdigit(static_cast<unsigned char>(normalized[i - 1])) != 0;
            if (normalized[i] == ',' || (normalized[i] == 'x' && digit_before)) {
                normalized[i] = ' ';
            }
        }
        std::istringstream in(normalized);
        FamilySpec spec;
        in >> spec.name;
        int value = 0;
        while (in >> value) {
            spec.params.push_back(value);
        }
        if (!in.eof()) {
            throw Error(Errc::Malformed, "bad family parameters in '" + text + "'");
        }
        return spec;
    }
};

inline PatternGraph generate(const FamilySpec& spec) {
    auto want = [&](std::size_t count) {
        if (spec.params.size() != count) {
            throw Error(Errc::Malformed, "family '" + spec.name + "' takes " + std::to_string(count) +
                                             " parameter(s)");
        }
    };
    const auto& p = spec.params;
    if (spec.name == "path") {
        want(1);
        return make_path(p[0]);
    }
    if (spec.name == "cycle") {
        want(1);
        return make_cycle(p[0]);
    }
    if (spec.name == "star") {
        want(1);
        return make_star(p[0]);
    }
    if (spec.name == "complete") {
        want(1);
        return make_complete(p[0]);
    }
    if (spec.name == "grid") {
        want(2);
        return make_grid(p[0], p[1]);
    }
    if (spec.name == "full_bary") {
        want(2);
        return make_full_bary(p[0], p[1]);
    }
    throw Error(Errc::Malformed, "unknown family '" + spec.name + "'");
}

/// One representative per isomorphism class of connected graphs on k
/// vertices (k <= 7). The representative is the labeling whose edge set,
/// read as a bitmask over lexicographically ordered pairs, is smallest.
inline std::vector<PatternGraph> enumerate_connected_graphs(int k) {
    if (k < 1 || k > 7) {
        throw Error(Errc::TooLarge, "graph enumeration supports 1..7 vertices");
    }
    std::vector<Edge> pairs;
    std::vector<std::vector<int>> pair_index(static_cast<std::size_t>(k) + 1,
                                             std::vector<int>(static_cast<std::size_t>(k) + 1, -1));
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            pair_index[i][j] = pair_index[j][i] = static_cast<int>(pairs.size());
            pairs.push_back({i, j});
        }
    }
    const std::uint32_t total = std::uint32_t{1} << pairs.size();
    std::vector<bool> seen(total, false);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::vector<PatternGraph> out;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (seen[mask]) {
            continue;
        }
        std::vector<Edge> edges;
        for (std::size_t e = 0; e < pairs.size(); ++e) {
            if ((mask >> e) & 1U) {
                edges.push_back(pairs[e]);
            }
        }
        PatternGraph g(k, edges);
        std::iota(perm.begin(), perm.end(), 1);
        do {
            std::uint32_t image = 0;
            for (const Edge& e : edges) {
                image |= std::uint32_t{1} << pair_index[perm[e.u - 1]][perm[e.v - 1]];
            }
            seen[image] = true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (is_connected(g)) {
            out.push_back(std::move(g));
        }
    }
    return out;
}

} // namespace baggy
