#pragma once

/**
 * @file tangle.hpp
 * @brief Framed-tangle expressions: a small DSL, boundary/port analysis with
 *        component tracing and writhe, and the colored-tangle evaluator that
 *        assigns a morphism to every expression.
 *
 * Grammar:
 *   expr  := hexpr ('*' hexpr)*          vertical composite, left over right
 *            (a * b places b at the bottom, a on top: morphism a after b)
 *   hexpr := atom ('|' atom)*            horizontal composite, left to right
 *   atom  := 'id' | 'x' | 'xi' | 'cup' | 'cap'
 *          | 'twist' '(' int ')' | 'r' '(' expr ')' | 'close' '(' expr ')'
 *          | '(' expr ')'
 *
 * 'x' is the positive crossing (the strand entering at the lower left passes
 * over), 'xi' its inverse, twist(n) the n-fold vertical stack of crossings,
 * r(...) the quarter turn of a 2-2 tangle, close(...) the plat-free closure
 * joining each target point to the matching source point around the side.
 */

#include "dwlink/category.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace dwlink {

enum class TangleKind { Id, CrossPos, CrossNeg, Cup, Cap, Twist, Rot, Close, VComp, HComp };

struct TangleNode;
using TanglePtr = std::shared_ptr<const TangleNode>;

struct TangleNode {
    TangleKind kind;
    long long twist = 0;  // Twist only
    TanglePtr a, b;       // children (VComp/HComp use both, Rot/Close use a)
    int text_pos = -1;    // position in source text, for error reporting
};

TanglePtr tangle_leaf(TangleKind k);
TanglePtr tangle_twist(long long n);
TanglePtr tangle_rot(TanglePtr e);
TanglePtr tangle_close(TanglePtr e);
TanglePtr tangle_v(TanglePtr top, TanglePtr bottom);
TanglePtr tangle_h(TanglePtr left, TanglePtr right);

struct parse_error : std::runtime_error {
    int position;
    parse_error(const std::string& what, int pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
};

/// Parse the DSL; throws parse_error with a position on malformed input.
TanglePtr parse_tangle(const std::string& text);

/// Rewrite Twist/Rot/Close into the primitive generators. The result is a
/// fresh tree (no shared subtrees), suitable for port analysis.
TanglePtr desugar(const TanglePtr& node);

/// Closure built around an already-desugared k-k tangle, keeping the given
/// subtree intact so it can still be addressed inside the analysis.
TanglePtr closure_around(TanglePtr desugared_kk, int arity);

struct LeafPorts {
    std::vector<int> src;
    std::vector<int> tgt;
};

/**
 * Port-level analysis of a desugared expression: strand components, a
 * canonical orientation (the lowest port of each component points up),
 * per-crossing signs, and per-component writhe.
 */
class TangleAnalysis {
  public:
    explicit TangleAnalysis(TanglePtr desugared_root);

    const TanglePtr& root() const { return root_; }
    const LeafPorts& ports_of(const TangleNode* node) const { return ports_.at(node); }
    const std::vector<int>& boundary_src() const { return src_; }
    const std::vector<int>& boundary_tgt() const { return tgt_; }
    bool closed() const { return src_.empty() && tgt_.empty(); }

    int component_count() const { return static_cast<int>(component_min_port_.size()); }
    int component_of(int port) const;
    /// +1 when the strand runs upward through the port under the canonical
    /// orientation, -1 otherwise.
    int direction(int port) const;

    struct CrossingInfo {
        const TangleNode* node;
        int s1, s2, t1, t2;
        int sign;       // writhe contribution under the canonical orientation
        bool self;      // both strands on one component
        int comp_over;  // component of the (s1,t2) strand
        int comp_under; // component of the (s2,t1) strand
    };
    const std::vector<CrossingInfo>& crossings() const { return crossings_; }

    long long writhe(int component) const { return writhe_[component]; }
    long long total_writhe() const;

    /// Oriented traversal of one closed component: the cyclic port sequence.
    std::vector<int> oriented_cycle(int component) const;

    int internal_partner(int port) const { return internal_[port]; }
    int external_partner(int port) const { return external_[port]; }
    const TangleNode* leaf_of(int port) const { return port_leaf_[port]; }

  private:
    TanglePtr root_;
    std::map<const TangleNode*, LeafPorts> ports_;
    std::vector<int> src_, tgt_;
    std::vector<int> internal_, external_;
    std::vector<const TangleNode*> port_leaf_;
    std::vector<int> comp_, dir_;
    std::vector<int> component_min_port_;
    std::vector<long long> writhe_;
    std::vector<CrossingInfo> crossings_;
};

/// Evaluate a subtree of the analyzed expression under a coloring (one
/// catalogue ordinal per component).
Morphism evaluate_subtree(const TangleAnalysis& an, const TangleNode* node,
                          const std::vector<int>& colors, const CategoryContext& ctx);

/// Catalogue ordinal of the strand color seen at a port: the component color
/// when the strand runs upward, its star otherwise.
int effective_color(const TangleAnalysis& an, int port, const std::vector<int>& colors,
                    const CategoryContext& ctx);

/// Evaluate the full expression.
Morphism evaluate(const TangleAnalysis& an, const std::vector<int>& colors,
                  const CategoryContext& ctx);

/// |vector_trace(F(T,c))| for an open tangle whose closure is to be taken;
/// also returns the plain evaluation of the explicitly closed diagram so the
/// two routes can be compared. The coloring is per closed-diagram component.
struct ClosureEval {
    cplx via_trace;
    cplx via_closed_diagram;
};
ClosureEval closure_eval(const TanglePtr& open_expr, const std::vector<int>& colors,
                         const CategoryContext& ctx);

/// Z(L): the invariant of a closed diagram as an element of E^{(x) r},
/// assembled from the evaluations over all colorings.
struct LinkInvariant {
    MultiEVector raw;                  // uncorrected
    std::vector<long long> writhes;    // per component
    MultiEVector writhe_corrected() const;
    LinkInvariant(MultiEVector z, std::vector<long long> w) : raw(std::move(z)), writhes(std::move(w)) {}
};
LinkInvariant dw_link_invariant(const TanglePtr& closed_expr, const CategoryContext& ctx);

/// Scalar evaluations per coloring tuple (row-major over components).
std::vector<cplx> colored_evaluations(const TangleAnalysis& an, const CategoryContext& ctx);

} // namespace dwlink
