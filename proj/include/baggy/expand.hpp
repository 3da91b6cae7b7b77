#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"
#include "evaluate.hpp"
#include "formula.hpp"
#include "graph.hpp"

namespace baggy {

/// Sorted variable multiset -> coefficient. Zero coefficients never appear.
template <class Var>
using MonomialMap = std::map<std::vector<Var>, boost::multiprecision::cpp_int>;

/// Number of parse trees of f, i.e. monomials counted with multiplicity
/// (Const 0 leaves contribute none).
template <class Var>
boost::multiprecision::cpp_int parse_tree_count(const Formula<Var>& f) {
    using boost::multiprecision::cpp_int;
    const auto& gates = f.gates();
    std::vector<cpp_int> stack;
    for (std::size_t i = gates.size(); i-- > 0;) {
        const auto& g = gates[i];
        if (g.kind == GateKind::Var) {
            stack.emplace_back(1);
        } else if (g.kind == GateKind::Const) {
            stack.emplace_back(g.constant.num == 0 ? 0 : 1);
        } else {
            cpp_int acc = g.kind == GateKind::Sum ? 0 : 1;
            for (std::uint32_t c = 0; c < g.arity; ++c) {
                if (g.kind == GateKind::Sum) {
                    acc += stack.back();
                } else {
                    acc *= stack.back();
                }
                stack.pop_back();
            }
            stack.push_back(std::move(acc));
        }
    }
    return stack.back();
}

struct ExpandOptions {
    std::uint64_t max_monomials = 1'000'000;
};

/// Distributes products over sums. Constants must be integers.
template <class Var>
MonomialMap<Var> expand(const Formula<Var>& f, ExpandOptions options = {}) {
    if (parse_tree_count(f) > options.max_monomials) {
        throw Error(Errc::TooLarge, "expansion exceeds the monomial cap");
    }
    const auto& gates = f.gates();
    std::vector<MonomialMap<Var>> stack;
    for (std::size_t i = gates.size(); i-- > 0;) {
        const auto& g = gates[i];
        MonomialMap<Var> out;
        switch (g.kind) {
        case GateKind::Var:
            out.emplace(std::vector<Var>{g.var}, 1);
            break;
        case GateKind::Const:
            if (g.constant.num % g.constant.den != 0) {
                throw Error(Errc::Malformed, "expansion needs integer constants");
            }
            if (g.constant.num != 0) {
                out.emplace(std::vector<Var>{}, g.constant.num / g.constant.den);
            }
            break;
        case GateKind::Sum:
            for (std::uint32_t c = 0; c < g.arity; ++c) {
                for (auto& [mono, coeff] : stack.back()) {
                    out[mono] += coeff;
                }
                stack.pop_back();
            }
            break;
        case GateKind::Product:
            out.emplace(std::vector<Var>{}, 1);
            for (std::uint32_t c = 0; c < g.arity; ++c) {
                MonomialMap<Var> next;
                for (const auto& [left, lc] : out) {
                    for (const auto& [right, rc] : stack.back()) {
                        std::vector<Var> merged;
                        merged.reserve(left.size() + right.size());
                        std::merge(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(merged));
                        next[std::move(merged)] += lc * rc;
                    }
                }
                out = std::move(next);
                stack.pop_back();
            }
            break;
        }
        stack.push_back(std::move(out));
    }
    return std::move(stack.back());
}

/// ColIso_{H,n} written out monomial by monomial.
inline MonomialMap<ColIsoVar> brute_coliso_monomials(const PatternGraph& g, std::uint32_t n,
                                                     OracleOptions options = {}) {
    detail::check_enumeration(g.k(), n, options.max_iterations);
    MonomialMap<ColIsoVar> out;
    detail::for_each_map(g.k(), n, [&](const std::vector<std::uint32_t>& u) {
        std::vector<ColIsoVar> mono;
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const Edge& edge = g.edges()[e];
            mono.push_back({static_cast<std::uint32_t>(e), u[edge.u], u[edge.v]});
        }
        std::sort(mono.begin(), mono.end());
        out[std::move(mono)] += 1;
    });
    return out;
}

/// Hom_{H,n} written out monomial by monomial.
inline MonomialMap<HomVar> brute_hom_monomials(const PatternGraph& g, std::uint32_t n, OracleOptions options = {}) {
    detail::check_enumeration(g.k(), n, options.max_iterations);
    MonomialMap<HomVar> out;
    detail::for_each_map(g.k(), n, [&](const std::vector<std::uint32_t>& phi) {
        std::vector<HomVar> mono;
        for (const Edge& edge : g.edges()) {
            std::uint32_t a = phi[edge.u];
            std::uint32_t b = phi[edge.v];
            if (a == b) {
                return;
            }
            mono.push_back({std::min(a, b), std::max(a, b)});
        }
        std::sort(mono.begin(), mono.end());
        out[std::move(mono)] += 1;
    });
    return out;
}

} // namespace baggy
