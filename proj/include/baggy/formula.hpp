#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace baggy {

/// Non-negative rational constant num/den.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    bool operator==(const Rational&) const = default;
};

/// Colored-isomorphism variable x_{(i,u),(j,v)} for the edge {i, j} with
/// i < j at position `edge` of PatternGraph::edges(); u is the host value
/// of i and v the host value of j, both in 1..n.
struct ColIsoVar {
    std::uint32_t edge = 0;
    std::uint32_t u = 0;
    std::uint32_t v = 0;

    friend auto operator<=>(const ColIsoVar&, const ColIsoVar&) = default;
};

/// Host-edge variable y_{u,v} of the homomorphism polynomial, u < v.
struct HomVar {
    std::uint32_t u = 0;
    std::uint32_t v = 0;

    friend auto operator<=>(const HomVar&, const HomVar&) = default;
};

/// Dense indexing of the |E(H)| * n^2 colored-isomorphism variables.
struct ColIsoSpace {
    using var_type = ColIsoVar;

    std::size_t edges = 0;
    std::uint32_t n = 0;

    std::size_t size() const { return edges * n * n; }
    std::size_t index(const ColIsoVar& x) const {
        return (static_cast<std::size_t>(x.edge) * n + (x.u - 1)) * n + (x.v - 1);
    }
    ColIsoVar var(std::size_t index) const {
        std::size_t nn = static_cast<std::size_t>(n) * n;
        return {static_cast<std::uint32_t>(index / nn), static_cast<std::uint32_t>(index % nn / n + 1),
                static_cast<std::uint32_t>(index % n + 1)};
    }
};

/// Dense indexing of the C(n, 2) host-edge variables, pairs in lexicographic order.
struct HomSpace {
    using var_type = HomVar;

    std::uint32_t n = 0;

    std::size_t size() const { return static_cast<std::size_t>(n) * (n - 1) / 2; }
    std::size_t index(const HomVar& y) const {
        std::size_t u = y.u - 1;
        return u * n - u * (u + 1) / 2 + (y.v - y.u - 1);
    }
    HomVar var(std::size_t index) const {
        std::uint32_t u = 1;
        while (index >= n - u) {
            index -= n - u;
            ++u;
        }
        return {u, static_cast<std::uint32_t>(u + 1 + index)};
    }
};

enum class GateKind : std::uint8_t { Sum, Product, Var, Const };

template <class Var>
struct Gate {
    GateKind kind = GateKind::Const;
    std::uint32_t arity = 0;
    Var var{};
    Rational constant{};

    bool operator==(const Gate&) const = default;
};

/// Arithmetic formula stored as its gate tree in preorder. Each gate's
/// children follow it contiguously; subtree_end(i) is one past the last
/// gate of the subtree rooted at i.
template <class Var>
class Formula {
public:
    using gate_type = Gate<Var>;
    using var_type = Var;

    Formula() : Formula(constant({0, 1})) {}

    explicit Formula(std::vector<gate_type> preorder) : gates_(std::move(preorder)) {
        if (gates_.empty()) {
            throw Error(Errc::Malformed, "formula has no gates");
        }
        ends_.assign(gates_.size(), 0);
        for (std::size_t i = gates_.size(); i-- > 0;) {
            const gate_type& g = gates_[i];
            bool internal = g.kind == GateKind::Sum || g.kind == GateKind::Product;
            if (internal != (g.arity > 0)) {
                throw Error(Errc::Malformed, "gate " + std::to_string(i) + " has inconsistent arity");
            }
            if (g.kind == GateKind::Const && g.constant.den == 0) {
                throw Error(Errc::Malformed, "zero denominator");
            }
            std::size_t cursor = i + 1;
            for (std::uint32_t c = 0; c < g.arity; ++c) {
                if (cursor >= gates_.size()) {
                    throw Error(Errc::Malformed, "gate " + std::to_string(i) + " runs past the end");
                }
                cursor = ends_[cursor];
            }
            ends_[i] = cursor;
        }
        if (ends_[0] != gates_.size()) {
            throw Error(Errc::Malformed, "gates do not form a single tree");
        }
    }

    static Formula variable(const Var& x) { return Formula(std::vector<gate_type>{{GateKind::Var, 0, x, {}}}); }
    static Formula constant(Rational c) { return Formula(std::vector<gate_type>{{GateKind::Const, 0, {}, c}}); }
    static Formula sum(const std::vector<Formula>& terms) { return combine(GateKind::Sum, terms, {0, 1}); }
    /// Single factors are returned as-is and empty products become 1.
    static Formula product(const std::vector<Formula>& factors) {
        if (factors.size() == 1) {
            return factors.front();
        }
        return combine(GateKind::Product, factors, {1, 1});
    }

    const std::vector<gate_type>& gates() const { return gates_; }
    const gate_type& gate(std::size_t i) const { return gates_[i]; }
    std::size_t gate_count() const { return gates_.size(); }
    std::size_t subtree_end(std::size_t i) const { return ends_[i]; }

    std::vector<std::size_t> children(std::size_t i) const {
        std::vector<std::size_t> out;
        out.reserve(gates_[i].arity);
        for (std::size_t c = i + 1; c < ends_[i]; c = ends_[c]) {
            out.push_back(c);
        }
        return out;
    }

    /// Copy with the leaf at `index` deleted from its parent's child list.
    Formula without_leaf(std::size_t index) const {
        if (index == 0 || index >= gates_.size() || gates_[index].arity != 0) {
            throw Error(Errc::Malformed, "can only delete a non-root leaf");
        }
        std::size_t parent = 0;
        for (std::size_t cur = 0; cur != index;) {
            parent = cur;
            cur = cur + 1;
            while (ends_[cur] <= index) {
                cur = ends_[cur];
            }
        }
        if (gates_[parent].arity < 2) {
            throw Error(Errc::Malformed, "deleting the leaf would leave an empty gate");
        }
        std::vector<gate_type> out = gates_;
        out[parent].arity -= 1;
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(index));
        return Formula(std::move(out));
    }

    bool operator==(const Formula& other) const { return gates_ == other.gates_; }

private:
    static Formula combine(GateKind kind, const std::vector<Formula>& parts, Rational empty_value) {
        if (parts.empty()) {
            return constant(empty_value);
        }
        std::vector<gate_type> out{{kind, static_cast<std::uint32_t>(parts.size()), {}, {}}};
        for (const Formula& p : parts) {
            out.insert(out.end(), p.gates_.begin(), p.gates_.end());
        }
        return Formula(std::move(out));
    }

    std::vector<gate_type> gates_;
    std::vector<std::size_t> ends_;
};

struct FormulaMetrics {
    std::size_t size = 0;
    int product_depth = 0;
    std::size_t sum_gates = 0;
    std::size_t product_gates = 0;
    std::size_t var_gates = 0;
    std::size_t const_gates = 0;
};

/// Size is the number of tree edges; product depth the most Product gates
/// on any root-to-leaf path.
template <class Var>
FormulaMetrics measure(const Formula<Var>& f) {
    FormulaMetrics m;
    const auto& gates = f.gates();
    m.size = gates.size() - 1;
    std::vector<int> depth(gates.size(), 0);
    for (std::size_t i = gates.size(); i-- > 0;) {
        const auto& g = gates[i];
        switch (g.kind) {
        case GateKind::Sum: ++m.sum_gates; break;
        case GateKind::Product: ++m.product_gates; break;
        case GateKind::Var: ++m.var_gates; break;
        case GateKind::Const: ++m.const_gates; break;
        }
        int deepest = 0;
        for (std::size_t c = i + 1; c < f.subtree_end(i); c = f.subtree_end(c)) {
            deepest = std::max(deepest, depth[c]);
        }
        depth[i] = deepest + (g.kind == GateKind::Product ? 1 : 0);
    }
    m.product_depth = depth[0];
    return m;
}

inline void write_var(std::ostream& os, const ColIsoVar& x) {
    os << "V e=" << x.edge << " u=" << x.u << " v=" << x.v;
}

inline void write_var(std::ostream& os, const HomVar& y) { os << "Y u=" << y.u << " v=" << y.v; }

/// One gate per line in preorder: `S <k>`, `P <k>`, `C <num>/<den>`, and
/// `V e=<edge> u=<u> v=<v>` (or `Y u=<u> v=<v>` for host-edge variables).
template <class Var>
void write_text(std::ostream& os, const Formula<Var>& f) {
    for (const auto& g : f.gates()) {
        switch (g.kind) {
        case GateKind::Sum: os << "S " << g.arity; break;
        case GateKind::Product: os << "P " << g.arity; break;
        case GateKind::Var: write_var(os, g.var); break;
        case GateKind::Const: os << "C " << g.constant.num << '/' << g.constant.den; break;
        }
        os << '\n';
    }
}

namespace detail {

inline std::uint32_t read_field(std::istringstream& in, const char* key, std::size_t line) {
    std::string token;
    in >> token;
    std::string prefix = std::string(key) + "=";
    if (token.rfind(prefix, 0) != 0) {
        throw Error(Errc::Malformed, "line " + std::to_string(line) + ": expected " + prefix);
    }
    try {
        return static_cast<std::uint32_t>(std::stoul(token.substr(prefix.size())));
    } catch (const std::exception&) {
        throw Error(Errc::Malformed, "line " + std::to_string(line) + ": bad number in " + token);
    }
}

inline void read_var(std::istringstream& in, char tag, ColIsoVar& x, std::size_t line) {
    if (tag != 'V') {
        throw Error(Errc::Malformed, "line " + std::to_string(line) + ": expected a V gate");
    }
    x.edge = read_field(in, "e", line);
    x.u = read_field(in, "u", line);
    x.v = read_field(in, "v", line);
}

inline void read_var(std::istringstream& in, char tag, HomVar& y, std::size_t line) {
    if (tag != 'Y') {
        throw Error(Errc::Malformed, "line " + std::to_string(line) + ": expected a Y gate");
    }
    y.u = read_field(in, "u", line);
    y.v = read_field(in, "v", line);
}

} // namespace detail

template <class Var>
Formula<Var> read_text(std::istream& is) {
    std::vector<Gate<Var>> gates;
    std::string text;
    std::size_t line = 0;
    while (std::getline(is, text)) {
        ++line;
        if (text.empty()) {
            continue;
        }
        std::istringstream in(text);
        char tag = 0;
        in >> tag;
        Gate<Var> g;
        if (tag == 'S' || tag == 'P') {
            g.kind = tag == 'S' ? GateKind::Sum : GateKind::Product;
            if (!(in >> g.arity)) {
                throw Error(Errc::Malformed, "line " + std::to_string(line) + ": missing child count");
            }
        } else if (tag == 'C') {
            char slash = 0;
            g.kind = GateKind::Const;
            if (!(in >> g.constant.num >> slash >> g.constant.den) || slash != '/') {
                throw Error(Errc::Malformed, "line " + std::to_string(line) + ": bad constant");
            }
        } else {
            g.kind = GateKind::Var;
            detail::read_var(in, tag, g.var, line);
        }
        gates.push_back(g);
    }
    return Formula<Var>(std::move(gates));
}

} // namespace baggy
