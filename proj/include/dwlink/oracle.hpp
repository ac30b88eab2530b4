#pragma once

/**
 * @file oracle.hpp
 * @brief Independent brute-force ground truth: Fox coloring counts through
 *        integer Smith normal form (and exhaustive enumeration), Wirtinger
 *        presentations, and homomorphism counting with peripheral
 *        constraints.
 *
 * Nothing in this module touches the category machinery; it only sees
 * diagrams and multiplication tables, which is what makes it usable as an
 * oracle for the quantum-double pipeline.
 */

#include "dwlink/espace.hpp"
#include "dwlink/linkdiagram.hpp"
#include "dwlink/tangle.hpp"

#include <optional>

namespace dwlink {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

struct SmithForm {
    IntMatrix d;       // diagonal, d1 | d2 | ...
    IntMatrix left;    // unimodular U
    IntMatrix right;   // unimodular V, with U * M * V = D
};
SmithForm smith_normal_form(const IntMatrix& m);

/// Coloring matrix of a diagram: one row per crossing, 2*over - in - out.
IntMatrix fox_matrix(const LinkDiagram& d);

/// Number of arc labelings in Z/n with under-arc sums twice the over-arc.
long long fox_count(const LinkDiagram& d, long long n);
/// The same count by trying all n^arcs assignments (small diagrams only).
long long fox_count_exhaustive(const LinkDiagram& d, long long n);

struct WirtingerPresentation {
    int generators = 0;                 // one per arc
    LinkDiagram diagram;                // carries relations and longitudes
    /// Longitude of one component as (arc, exponent) letters; when
    /// `zero_framed`, the meridian correction m^{-writhe} is appended.
    std::vector<std::pair<int, int>> longitude(int component, bool zero_framed) const;
};
WirtingerPresentation wirtinger_presentation(const LinkDiagram& d);

struct PeripheralConstraint {
    int meridian_image = 0;
    std::optional<int> longitude_image;   // checked against the chosen framing
    bool zero_framed_longitude = true;
};

/**
 * Exact homomorphism count by exhaustive search, restricted per component to
 * the conjugacy class of the meridian image. Constraints are per component;
 * a missing entry leaves that component's meridian free.
 */
long long hom_count(const WirtingerPresentation& p, const FiniteGroup& g,
                    const std::vector<std::optional<PeripheralConstraint>>& constraints = {});

/// Search-space guard (assignments tried before relation checks).
inline constexpr long long kHomSearchGuard = 100'000'000;

/// Full comparison of the quantum-double invariant of a closed tangle with
/// the Wirtinger counts of its extracted diagram, at every commuting tuple.
struct OracleReport {
    LinkDiagram diagram;
    std::vector<long long> writhes;
    // tables indexed by the flat commuting-tuple index of MultiEVector
    std::vector<long long> hom_zero_framed;
    std::vector<long long> hom_blackboard;
    std::vector<long long> dw_corrected; // rounded from the corrected invariant
    std::vector<long long> dw_raw;       // rounded, blackboard-framed reading
    std::vector<long long> mismatches_corrected; // flat indices
    std::vector<long long> mismatches_raw;
    bool all_match() const { return mismatches_corrected.empty() && mismatches_raw.empty(); }
};
OracleReport dw_vs_homcount(const TanglePtr& closed_expr, const CategoryContext& ctx);

} // namespace dwlink
