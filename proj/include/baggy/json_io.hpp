#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "formula.hpp"
#include "graph.hpp"
#include "tree.hpp"

namespace baggy {

using Json = nlohmann::ordered_json;

/// `{"k": <int>, "edges": [[i, j], ...]}`, written with i < j.
inline Json graph_to_json(const PatternGraph& g) {
    Json edges = Json::array();
    for (const Edge& e : g.edges()) {
        edges.push_back({e.u, e.v});
    }
    return Json{{"k", g.k()}, {"edges", std::move(edges)}};
}

inline PatternGraph graph_from_json(const Json& j) {
    try {
        int k = j.at("k").get<int>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw Error(Errc::Malformed, "edge must be a pair");
            }
            edges.push_back({e[0].get<int>(), e[1].get<int>()});
        }
        return PatternGraph(k, std::move(edges));
    } catch (const nlohmann::json::exception& ex) {
        throw Error(Errc::Malformed, std::string("graph JSON: ") + ex.what());
    }
}

/// Nested `{"bag": [...], "children": [...]}`.
inline Json tree_to_json(const BaggyTree::Nested& n) {
    Json children = Json::array();
    for (const auto& c : n.children) {
        children.push_back(tree_to_json(c));
    }
    return Json{{"bag", n.bag}, {"children", std::move(children)}};
}

inline Json tree_to_json(const BaggyTree& t) {
    if (!t.well_formed()) {
        throw Error(Errc::NotTree, "cannot serialize a malformed tree");
    }
    return tree_to_json(t.to_nested());
}

inline BaggyTree::Nested nested_from_json(const Json& j) {
    BaggyTree::Nested n;
    try {
        n.bag = j.at("bag").get<std::vector<int>>();
        if (j.contains("children")) {
            for (const auto& c : j.at("children")) {
                n.children.push_back(nested_from_json(c));
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(Errc::Malformed, std::string("tree JSON: ") + ex.what());
    }
    for (int v : n.bag) {
        if (v < 1 || v > VertexSet::kMaxVertices) {
            throw Error(Errc::Malformed, "bag vertex " + std::to_string(v) + " out of range");
        }
    }
    return n;
}

inline BaggyTree tree_from_json(const Json& j) { return BaggyTree::from_nested(nested_from_json(j)); }

inline Json var_to_json(const ColIsoVar& x) { return Json{{"e", x.edge}, {"u", x.u}, {"v", x.v}}; }
inline Json var_to_json(const HomVar& y) { return Json{{"u", y.u}, {"v", y.v}}; }

/// Nested JSON variant of the text format.
template <class Var>
Json formula_to_json(const Formula<Var>& f, std::size_t gate = 0) {
    const auto& g = f.gate(gate);
    switch (g.kind) {
    case GateKind::Var:
        return Json{{"op", "var"}, {"var", var_to_json(g.var)}};
    case GateKind::Const:
        return Json{{"op", "const"}, {"num", g.constant.num}, {"den", g.constant.den}};
    case GateKind::Sum:
    case GateKind::Product: {
        Json children = Json::array();
        for (std::size_t c : f.children(gate)) {
            children.push_back(formula_to_json(f, c));
        }
        return Json{{"op", g.kind == GateKind::Sum ? "sum" : "product"}, {"children", std::move(children)}};
    }
    }
    return Json();
}

} // namespace baggy
