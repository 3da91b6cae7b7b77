#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"
#include "field.hpp"
#include "formula.hpp"
#include "graph.hpp"
#include "tree.hpp"

namespace baggy {

/// Exact evaluation ring for the big-number checks.
using ExactRational = boost::multiprecision::cpp_rational;

template <class R>
R ring_constant(const Rational& c);

template <>
inline Fp ring_constant<Fp>(const Rational& c) {
    Fp den(c.den);
    if (den == Fp::zero()) {
        throw Error(Errc::Malformed, "constant denominator vanishes modulo p");
    }
    return Fp(c.num) * den.inverse();
}

template <>
inline ExactRational ring_constant<ExactRational>(const Rational& c) {
    return ExactRational(boost::multiprecision::cpp_int(c.num), boost::multiprecision::cpp_int(c.den));
}

/// Dense values for every variable of a space, callable as a lookup.
template <class Space, class R = Fp>
struct Assignment {
    Space space;
    std::vector<R> values;

    Assignment(Space s, R fill) : space(s), values(s.size(), fill) {}
    Assignment(Space s, std::vector<R> v) : space(s), values(std::move(v)) {
        if (values.size() != space.size()) {
            throw Error(Errc::Malformed, "assignment does not cover the variable universe");
        }
    }

    const R& operator()(const typename Space::var_type& x) const { return values[space.index(x)]; }
    R& operator[](const typename Space::var_type& x) { return values[space.index(x)]; }
};

/// Bottom-up evaluation; `lookup` maps a variable to its value.
template <class R, class Var, class Lookup>
R eval_ir(const Formula<Var>& f, const Lookup& lookup) {
    const auto& gates = f.gates();
    std::vector<R> stack;
    for (std::size_t i = gates.size(); i-- > 0;) {
        const auto& g = gates[i];
        switch (g.kind) {
        case GateKind::Var:
            stack.push_back(lookup(g.var));
            break;
        case GateKind::Const:
            stack.push_back(ring_constant<R>(g.constant));
            break;
        case GateKind::Sum: {
            R acc(0U);
            for (std::uint32_t c = 0; c < g.arity; ++c) {
                acc += stack.back();
                stack.pop_back();
            }
            stack.push_back(acc);
            break;
        }
        case GateKind::Product: {
            R acc(1U);
            for (std::uint32_t c = 0; c < g.arity; ++c) {
                acc *= stack.back();
                stack.pop_back();
            }
            stack.push_back(acc);
            break;
        }
        }
    }
    return stack.back();
}

struct OracleOptions {
    /// Most assignments [n]^k a brute-force oracle will enumerate.
    std::uint64_t max_iterations = 1'000'000'000;
};

namespace detail {

inline void check_enumeration(int k, std::uint64_t n, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
        if (total > cap / n) {
            throw Error(Errc::TooLarge, "brute force over n^k exceeds the iteration cap");
        }
        total *= n;
    }
}

/// Calls visit(values) for every u in [n]^k, values[i] being u_i (1-based).
template <class Visit>
void for_each_map(int k, std::uint32_t n, Visit&& visit) {
    std::vector<std::uint32_t> value(static_cast<std::size_t>(k) + 1, 1);
    while (true) {
        visit(value);
        int i = k;
        while (i >= 1 && value[i] == n) {
            value[i] = 1;
            --i;
        }
        if (i < 1) {
            return;
        }
        ++value[i];
    }
}

} // namespace detail

/// Sum over all u in [n]^k of the product over edges {i, j} of x_{(i,u_i),(j,u_j)}.
template <class R, class Lookup>
R brute_coliso(const PatternGraph& g, std::uint32_t n, const Lookup& lookup, OracleOptions options = {}) {
    detail::check_enumeration(g.k(), n, options.max_iterations);
    R total(0U);
    detail::for_each_map(g.k(), n, [&](const std::vector<std::uint32_t>& u) {
        R term(1U);
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const Edge& edge = g.edges()[e];
            term *= lookup(ColIsoVar{static_cast<std::uint32_t>(e), u[edge.u], u[edge.v]});
        }
        total += term;
    });
    return total;
}

/// Sum over homomorphisms phi: H -> K_n of the product of y_{phi(e)}.
template <class R, class Lookup>
R brute_hom(const PatternGraph& g, std::uint32_t n, const Lookup& lookup, OracleOptions options = {}) {
    detail::check_enumeration(g.k(), n, options.max_iterations);
    R total(0U);
    detail::for_each_map(g.k(), n, [&](const std::vector<std::uint32_t>& phi) {
        for (const Edge& edge : g.edges()) {
            if (phi[edge.u] == phi[edge.v]) {
                return;
            }
        }
        R term(1U);
        for (const Edge& edge : g.edges()) {
            std::uint32_t a = phi[edge.u];
            std::uint32_t b = phi[edge.v];
            term *= lookup(HomVar{std::min(a, b), std::max(a, b)});
        }
        total += term;
    });
    return total;
}

/// Evaluates the tree's formula for ColIso_{H,n} without materializing it.
///
/// The value below node t depends on the ancestor assignment only through
/// the ancestors adjacent to t's subtree, so results are memoized per node
/// on that restriction.
template <class R, class Lookup>
class StreamingEvaluator {
public:
    StreamingEvaluator(const PatternGraph& g, const BaggyTree& t, std::uint32_t n, const Lookup& lookup)
        : g_(g), t_(t), n_(n), lookup_(lookup), value_(static_cast<std::size_t>(g.k()) + 1, 0) {
        if (Status s = validate_tree(t, g)) {
            throw Error(Errc::InvalidTree, s->what());
        }
        const auto below = t.subtree_vertices();
        const auto above = t.ancestor_vertices();
        nodes_.resize(static_cast<std::size_t>(t.size()));
        for (int id = 0; id < t.size(); ++id) {
            Node& node = nodes_[id];
            VertexSet bag = t.node(id).bag;
            node.bag = bag.to_vector();
            VertexSet touching;
            for (int v : below[id]) {
                touching |= g.neighbors(v);
            }
            node.relevant = (touching & above[id]).to_vector();
            std::uint64_t keys = 1;
            for (std::size_t i = 0; i < node.relevant.size(); ++i) {
                if (keys > ~std::uint64_t{0} / n) {
                    throw Error(Errc::TooLarge, "memo key space overflows 64 bits");
                }
                keys *= n;
            }
            for (std::size_t e = 0; e < g.edge_count(); ++e) {
                const Edge& edge = g.edges()[e];
                if ((bag.contains(edge.u) && (bag.contains(edge.v) || above[id].contains(edge.v))) ||
                    (bag.contains(edge.v) && above[id].contains(edge.u))) {
                    node.edges.push_back(static_cast<int>(e));
                }
            }
        }
    }

    R run() { return value(t_.root()); }

private:
    struct Node {
        std::vector<int> bag;
        std::vector<int> relevant;
        std::vector<int> edges;
        std::unordered_map<std::uint64_t, R> memo;
    };

    R value(int id) {
        Node& node = nodes_[id];
        std::uint64_t key = 0;
        for (int v : node.relevant) {
            key = key * n_ + (value_[v] - 1);
        }
        if (auto it = node.memo.find(key); it != node.memo.end()) {
            return it->second;
        }
        R total(0U);
        for (int v : node.bag) {
            value_[v] = 1;
        }
        while (true) {
            R term(1U);
            for (int e : node.edges) {
                const Edge& edge = g_.edges()[e];
                term *= lookup_(ColIsoVar{static_cast<std::uint32_t>(e), value_[edge.u], value_[edge.v]});
            }
            for (int child : t_.node(id).children) {
                term *= value(child);
            }
            total += term;
            auto it = node.bag.rbegin();
            for (; it != node.bag.rend(); ++it) {
                if (value_[*it] < n_) {
                    ++value_[*it];
                    break;
                }
                value_[*it] = 1;
            }
            if (it == node.bag.rend()) {
                break;
            }
        }
        for (int v : node.bag) {
            value_[v] = 0;
        }
        node.memo.emplace(key, total);
        return total;
    }

    const PatternGraph& g_;
    const BaggyTree& t_;
    std::uint32_t n_;
    const Lookup& lookup_;
    std::vector<std::uint32_t> value_;
    std::vector<Node> nodes_;
};

template <class R, class Lookup>
R eval_streaming(const PatternGraph& g, const BaggyTree& t, std::uint32_t n, const Lookup& lookup) {
    return StreamingEvaluator<R, Lookup>(g, t, n, lookup).run();
}

} // namespace baggy
