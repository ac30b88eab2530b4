#pragma once

/**
 * @file gmodule.hpp
 * @brief Graded unitary modules over a finite group (quantum-double modules)
 *        and the structure maps of their braided category: tensor product,
 *        dual, braiding, coevaluation/evaluation, characters.
 *
 * A module is a group-graded inner product space with a unitary action that
 * permutes the grades by conjugation. Bases are orthonormal by construction;
 * a basis vector carries a grade, and grades need not be contiguous in the
 * enumeration (tensor products keep plain row-major ordering, which makes
 * the tensor product strictly associative at the matrix level).
 */

#include "dwlink/espace.hpp"

#include <memory>
#include <string>
#include <vector>

namespace dwlink {

class GradedModule {
  public:
    GradedModule(GroupPtr group, std::string name, std::vector<int> grade_of,
                 std::vector<cmat> action);

    const FiniteGroup& group() const { return *group_; }
    GroupPtr group_ptr() const { return group_; }
    const std::string& name() const { return name_; }
    int dim() const { return static_cast<int>(grade_of_.size()); }
    int grade_of(int basis_idx) const { return grade_of_[basis_idx]; }
    const cmat& act(int g) const { return action_[g]; }

    int grade_dim(int x) const;

    /// Homomorphism + unitarity + grade bookkeeping; throws on failure.
    void validate(double tol = kTol) const;

  private:
    GroupPtr group_;
    std::string name_;
    std::vector<int> grade_of_;
    std::vector<cmat> action_;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

/// The unit object: one-dimensional, graded at the identity, trivial action.
ModulePtr unit_object(GroupPtr g);

/// (U (x) V) with row-major basis (a,b) -> a*dimV + b, grade product, kron action.
ModulePtr tensor(const ModulePtr& u, const ModulePtr& v);

/**
 * Dual module on the same index set: basis vector i becomes its formal
 * conjugate, the grade inverts, and action matrices conjugate entrywise.
 * Applying dual twice gives back a module identical to the original.
 */
ModulePtr dual(const ModulePtr& u);

/// A morphism between ordered tensor products of modules, stored densely in
/// the row-major product basis. An empty factor list is the unit object.
struct Morphism {
    std::vector<ModulePtr> src;
    std::vector<ModulePtr> tgt;
    cmat mat;

    static int product_dim(const std::vector<ModulePtr>& factors);
    static Morphism identity(std::vector<ModulePtr> factors);
    static Morphism zero(std::vector<ModulePtr> src, std::vector<ModulePtr> tgt);

    int src_dim() const { return product_dim(src); }
    int tgt_dim() const { return product_dim(tgt); }
};

/// Vertical composition a after b.
Morphism compose(const Morphism& a, const Morphism& b);
/// Horizontal composition (side by side); matrix is the Kronecker product.
Morphism hcompose(const Morphism& a, const Morphism& b);

/// Grade of a product basis index (product of factor grades, left to right).
int product_grade(const std::vector<ModulePtr>& factors, long long index);

/// Grade-preservation defect of a morphism (max |entry| between unequal grades).
double grade_defect(const Morphism& f);
/// Equivariance defect: max over group elements of |g.f - f.g|.
double equivariance_defect(const Morphism& f);

/// Braiding R_{U,V}: U (x) V -> V (x) U,  u_x (x) v ->  (x.v) (x) u_x.
Morphism braiding(const ModulePtr& u, const ModulePtr& v);
/// Inverse braiding as a morphism U (x) V -> V (x) U (the negative crossing).
Morphism braiding_inverse(const ModulePtr& u, const ModulePtr& v);

/// Coevaluation i_U : unit -> U (x) U*. Pass the dual explicitly so that
/// chained compositions share one dual object per module.
Morphism cup(const ModulePtr& u, const ModulePtr& ustar);
/// Evaluation e_U : U* (x) U -> unit.
Morphism cap(const ModulePtr& u, const ModulePtr& ustar);

/// Character chi_U(x,g) = tr(g restricted to grade x), as an element of E.
EVector character(const GradedModule& u, PairSpacePtr pairs);
/// Total dimension (= sum of grade dimensions).
int dim_total(const GradedModule& u);

/// Materialize an ordered factor list as one module (same index space).
ModulePtr product_module(GroupPtr g, const std::vector<ModulePtr>& factors);

} // namespace dwlink
