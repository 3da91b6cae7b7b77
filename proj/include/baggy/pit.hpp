#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "evaluate.hpp"
#include "field.hpp"
#include "formula.hpp"
#include "random.hpp"

namespace baggy {

/// Polynomial given as a black box over a dense variable universe.
using Evaluator = std::function<Fp(std::span<const Fp>)>;

struct PitResult {
    bool equal = true;
    /// First assignment on which the two sides disagree.
    std::optional<std::vector<Fp>> counterexample;
    std::vector<std::uint64_t> seeds;
    int trials = 0;
};

/// Randomized identity test: evaluates both sides at `trials` uniform points
/// of F_p^universe. Two distinct polynomials of degree d agree at a random
/// point with probability at most d / p.
inline PitResult pit_equiv(const Evaluator& lhs, const Evaluator& rhs, std::size_t universe, int trials,
                           std::uint64_t seed) {
    PitResult result;
    std::vector<Fp> point(universe);
    for (int trial = 0; trial < trials; ++trial) {
        std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
        result.seeds.push_back(trial_seed);
        Rng rng(trial_seed);
        for (Fp& x : point) {
            x = uniform_field_element(rng);
        }
        ++result.trials;
        if (lhs(point) != rhs(point)) {
            result.equal = false;
            result.counterexample = point;
            break;
        }
    }
    return result;
}

namespace detail {

template <class Space>
struct SpanLookup {
    Space space;
    std::span<const Fp> values;

    Fp operator()(const typename Space::var_type& x) const { return values[space.index(x)]; }
};

} // namespace detail

template <class Var, class Space>
Evaluator formula_evaluator(Formula<Var> f, Space space) {
    return [f = std::move(f), space](std::span<const Fp> values) {
        return eval_ir<Fp>(f, detail::SpanLookup<Space>{space, values});
    };
}

inline Evaluator coliso_oracle(PatternGraph g, std::uint32_t n) {
    return [g = std::move(g), n](std::span<const Fp> values) {
        ColIsoSpace space{g.edge_count(), n};
        return brute_coliso<Fp>(g, n, detail::SpanLookup<ColIsoSpace>{space, values});
    };
}

inline Evaluator hom_oracle(PatternGraph g, std::uint32_t n) {
    return [g = std::move(g), n](std::span<const Fp> values) {
        return brute_hom<Fp>(g, n, detail::SpanLookup<HomSpace>{HomSpace{n}, values});
    };
}

inline Evaluator streaming_evaluator(PatternGraph g, BaggyTree t, std::uint32_t n) {
    return [g = std::move(g), t = std::move(t), n](std::span<const Fp> values) {
        ColIsoSpace space{g.edge_count(), n};
        return eval_streaming<Fp>(g, t, n, detail::SpanLookup<ColIsoSpace>{space, values});
    };
}

} // namespace baggy
