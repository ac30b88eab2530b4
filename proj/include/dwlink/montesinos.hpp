#pragma once

/**
 * @file montesinos.hpp
 * @brief Continued fractions, rational tangles via the quarter-turn/crossing
 *        recursion, and Montesinos link invariants assembled from per-color
 *        block traces.
 *
 * A rational tangle for p/q with expansion [[s_1,...,s_k]] is the tangle
 * r(s_k . r(... r(s_1))) built from integral twist stacks and quarter turns;
 * a Montesinos link is the closure of a vertical composite of rational
 * tangles. The evaluator route and the block recursion route compute the
 * same morphisms and are cross-checked in the tests.
 */

#include "dwlink/tangle.hpp"

namespace dwlink {

struct Fraction {
    long long p = 0;
    long long q = 1;
};

/// Normalize to q > 0; rejects q = 0 and non-reduced input.
Fraction normalize_fraction(long long p, long long q);

struct MontesinosSpec {
    std::vector<Fraction> fractions;

    static MontesinosSpec parse(const std::string& text); // "p1/q1,p2/q2,..."
    std::string to_string() const;
};

/// Canonical expansion [[s_1,...,s_k]] = p/q: innermost-first greedy with
/// every coefficient but the outermost at least 2 in absolute value.
std::vector<long long> continued_fraction(const Fraction& f);
/// Second strategy (nearest-integer steps), used to test expansion
/// invariance; reconstructs the same fraction.
std::vector<long long> continued_fraction_alt(const Fraction& f);
/// Exact reconstruction of [[s_1,...,s_k]].
Fraction continued_fraction_value(const std::vector<long long>& coeffs);

/// mu(p/q): coefficient sum of the canonical expansion.
long long mu(const Fraction& f);

/// The rational tangle as a desugared expression, plus the bottom entry
/// ports of every twist level (needed to seed the block recursion).
struct RationalBuild {
    TanglePtr root;
    std::vector<long long> coeffs;
    // per level: the crossing leaves from bottom to top (empty for a 0-twist)
    std::vector<std::vector<const TangleNode*>> level_crossings;
    // per level: the two source ports of the twist stack (left, right)
    std::vector<std::array<const TangleNode*, 2>> level_entry_leaves;
};
RationalBuild build_rational_tangle(const Fraction& f);

/// Desugared closed Montesinos diagram together with its rational parts.
struct MontesinosBuild {
    TanglePtr closed;
    std::vector<RationalBuild> parts; // bottom to top
};
MontesinosBuild build_montesinos(const MontesinosSpec& spec);

/// Convenience: the closed diagram as a parsed-style expression.
TanglePtr montesinos_expr(const MontesinosSpec& spec);

/// F(T(p/q), i) through the block recursion: alternate crossing
/// powers with relabeled quarter turns, tracking the four boundary colors.
struct RationalMorphism {
    Morphism morphism;      // between catalogue simples
    int c1, c2, c3, c4;     // boundary colors, source pair then target pair
    BlockMatrix blocks;     // block transport of `morphism`
};
RationalMorphism rational_tangle_morphism(const Fraction& f, int color,
                                          const CategoryContext& ctx);

/// One component or many: per-coloring scalars and the assembled invariant.
struct MontesinosResult {
    bool knot = false;
    long long writhe = 0;                 // total writhe of the canonical diagram
    std::vector<cplx> scalars;            // F(K,c) in row-major coloring order
    MultiEVector invariant;               // Z(K), one tensor slot per component
    std::vector<bool> scalar_real;        // |Im| below tolerance
    std::vector<bool> scalar_nonneg;      // Re above -tolerance
    MontesinosResult(MultiEVector z) : invariant(std::move(z)) {}
};
MontesinosResult montesinos_invariant(const MontesinosSpec& spec, const CategoryContext& ctx);

bool is_knot(const MontesinosSpec& spec);

/// sum_i mu(p_i/q_i) must match the diagram writhe mod 2.
bool writhe_parity_check(const MontesinosSpec& spec);

} // namespace dwlink
