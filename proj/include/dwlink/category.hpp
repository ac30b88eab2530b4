#pragma once

/**
 * @file category.hpp
 * @brief Per-group cache of the modular category: simple objects, fusion
 *        rules, intertwiner bases, block transport, and the quarter-turn
 *        operation on 2-2 morphisms.
 *
 * Everything here is built once per group and then shared read-only. Simple
 * objects are induced modules indexed by (conjugacy class, centralizer
 * irrep); their characters coincide with the canonical basis of E, which is
 * asserted at construction time.
 *
 * Intertwiner bases, duals, and fusion numbers are filled lazily into
 * mutable caches without locking: warm them on one thread before sharing a
 * context, or keep evaluation single-threaded.
 */

#include "dwlink/gmodule.hpp"

#include <map>
#include <optional>

namespace dwlink {

/// Per-simple block of a 2-2 morphism transported through the intertwiner
/// basis: for each simple j a complex matrix of shape N^j(target) x N^j(source).
struct BlockMatrix {
    std::vector<cmat> blocks; // indexed by simple ordinal; 0x0 when absent
};

class CategoryContext {
  public:
    explicit CategoryContext(GroupPtr g, std::uint64_t seed = 0);

    const FiniteGroup& group() const { return *gd_.group; }
    GroupPtr group_ptr() const { return gd_.group; }
    const GroupData& data() const { return gd_; }
    PairSpacePtr pairs() const { return gd_.pairs; }
    std::uint64_t seed() const { return seed_; }

    int simple_count() const { return static_cast<int>(simples_.size()); }
    const ModulePtr& simple(int i) const { return simples_[i]; }
    const SimpleIndex& simple_index(int i) const { return gd_.simples[i]; }
    const EVector& chi(int i) const { return chis_[i]; }
    const std::vector<EVector>& basis() const { return chis_; }
    cplx twist(int i) const { return thetas_[i]; }
    int dim_of(int i) const { return simples_[i]->dim(); }
    int unit_index() const { return unit_idx_; }

    /// Involution i -> i* with V(i*) isomorphic to V(i)*.
    int star(int i) const { return star_[i]; }

    /// Cached dual module; involutive at the pointer level.
    ModulePtr dual_of(const ModulePtr& u) const;

    /// Fixed unitary identification V(i*) -> V(i)^dual (Schur-normalized,
    /// first nonzero entry real positive).
    const cmat& dual_identification(int i) const;

    /// Fusion multiplicity N_{i,i'}^j from character pairing; asserted integral.
    int fusion(int i, int ip, int j) const;

    /// Orthonormal intertwiners V(j) -> A (Schur-normalized, deterministic order).
    std::vector<cmat> hom_basis(const ModulePtr& a, int j) const;

    /// Ordered slot list (j, copy) and the unitary U : (+)_slots V(j) -> V(i) (x) V(i').
    struct Beta {
        std::vector<std::pair<int, int>> slots; // (simple ordinal, multiplicity copy)
        std::vector<int> slot_offset;           // column offset of each slot
        cmat iso;                               // dim(V(i) (x) V(i')) square unitary
    };
    const Beta& beta(int i, int ip) const;

    /// Block transport of f : V(i1) (x) V(i2) -> V(i3) (x) V(i4).
    BlockMatrix phi(const Morphism& f, int i1, int i2, int i3, int i4) const;
    Morphism phi_inverse(const BlockMatrix& b, int i1, int i2, int i3, int i4) const;

    /// Quarter turn by index transposition; source/target are dual modules.
    Morphism rot(const Morphism& f) const;
    /// The same map as the categorical composite with cup/cap (test oracle).
    Morphism rot_categorical(const Morphism& f) const;
    /// rot with boundary duals relabeled to catalogue simples through the
    /// fixed identifications. Colors (i1,i2;i3,i4) -> (i3*,i1;i4,i2*).
    Morphism rot_relabeled(const Morphism& f, int i1, int i2, int i3, int i4) const;

    /// Block form of rot: phi . rot . phi^{-1} for given boundary colors.
    BlockMatrix rot_block(const BlockMatrix& b, int i1, int i2, int i3, int i4) const;

    /// Vector-valued trace of an endomorphism (source factors == target factors).
    EVector vector_trace(const Morphism& f) const;
    /// |w| = sum_i Dim V(i) * (w, chi_i).
    cplx norm_bar(const EVector& w) const;

    /// Relabel boundary factors that are duals of simples to the catalogue
    /// simple of the starred index, conjugating by the identifications.
    Morphism to_catalogue(const Morphism& f) const;
    /// Catalogue ordinal of a module pointer (simple or dual of one).
    int catalogue_index(const ModulePtr& m) const;

  private:
    GroupData gd_;
    std::uint64_t seed_;
    std::vector<ModulePtr> simples_;
    std::vector<EVector> chis_;
    std::vector<cplx> thetas_;
    std::vector<int> star_;
    std::vector<cmat> dual_ident_;
    int unit_idx_ = -1;
    mutable std::map<const GradedModule*, ModulePtr> dual_cache_;
    mutable std::map<std::pair<int, int>, Beta> beta_cache_;
    mutable std::map<std::tuple<int, int, int>, int> fusion_cache_;
    mutable std::map<const GradedModule*, int> catalogue_lookup_;

    ModulePtr build_simple(const SimpleIndex& idx) const;
    std::vector<cmat> solve_hom(const ModulePtr& a, const ModulePtr& b, int expected,
                                const std::string& key) const;
};

using ContextPtr = std::shared_ptr<CategoryContext>;

} // namespace dwlink
