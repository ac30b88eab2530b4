#pragma once

/**
 * @file dihedral.hpp
 * @brief Exact closed forms for the dihedral groups D_n with n odd: the
 *        block transport of the braiding on the reflection-graded objects,
 *        the quarter-turn matrix on block labels, the rational-tangle closed
 *        form, and the two n-coloring counts.
 *
 * The tensor square of a reflection-graded object W decomposes with
 * multiplicity one into the unit object, the two-dimensional grade-e objects
 * (one per r = 1..(n-1)/2), and the rotation-graded objects V^{j,t}
 * (j = 1..(n-1)/2, t = 1..n); the one-dimensional sign object does not
 * occur. Block vectors over these (n^2+1)/2 labels are what the exact
 * pipeline manipulates, with all scalars in the 2n-th cyclotomic field.
 */

#include "dwlink/category.hpp"
#include "dwlink/cyclotomic.hpp"
#include "dwlink/montesinos.hpp"

namespace dwlink {

class DihedralEngine {
  public:
    explicit DihedralEngine(int n_odd);

    int n() const { return n_; }
    const CycFieldPtr& field() const { return field_; }

    /// Number of block labels, (n^2+1)/2.
    int labels() const { return label_count_; }
    int label_unit() const { return 0; }
    int label_r(int r) const;          // r = 1..(n-1)/2
    int label_jt(int j, int t) const;  // j = 1..(n-1)/2, t = 1..n
    /// Total dimension of the simple behind a label (1 for the unit, else 2).
    long long dim_weight(int label) const { return label == 0 ? 1 : 2; }

    /// Diagonal of the transported braiding power: sign^c on the scalar
    /// labels and sign^c zeta^{c j t / 2} on the (j,t) labels.
    std::vector<Cyc> phi_R(int sign, long long power) const;

    /// The quarter-turn matrix applied to a block vector.
    std::vector<Cyc> rot_apply(const std::vector<Cyc>& v) const;
    /// Entry of the quarter-turn matrix (all entries carry a 1/n factor).
    Cyc rot_entry(int row, int col) const;

    /// Alternating crossing/quarter-turn recursion for one rational tangle.
    std::vector<Cyc> rational_recursion(int sign, const Fraction& f) const;
    /// Closed form: sign^mu (n,p) on the surviving labels, with the (j,t)
    /// entry a fixed root of unity; requires p != 0.
    std::vector<Cyc> rational_closed_form(int sign, const Fraction& f) const;

    /// F(K, W(sign)) for a Montesinos spec: dimension-weighted trace of the
    /// entrywise product of the per-tangle block vectors.
    Cyc montesinos_scalar(int sign, const MontesinosSpec& spec, bool use_recursion = false) const;

    /// Number of n-colorings through the invariant, evaluated on the
    /// reflection-graded colors only. Knots only.
    long long coloring_count_via_dw(const MontesinosSpec& spec) const;

  private:
    int n_;
    int half_;
    int label_count_;
    CycFieldPtr field_;
};

/// Closed-form arithmetic count of n-colorings of a Montesinos knot.
long long coloring_count_formula(long long n, const MontesinosSpec& spec);

/// Ordinals of the catalogue simples matching each block label (unit, the
/// grade-e two-dimensional objects, the rotation-graded objects), plus the
/// two reflection-graded ordinals, for the generic engine over the same D_n.
struct DihedralCatalogueMap {
    std::vector<int> label_to_ordinal;
    int w_plus = -1;
    int w_minus = -1;
};
DihedralCatalogueMap dihedral_catalogue_map(const DihedralEngine& eng, const CategoryContext& ctx);

} // namespace dwlink
