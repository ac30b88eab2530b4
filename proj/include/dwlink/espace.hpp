#pragma once

/**
 * @file espace.hpp
 * @brief The inner-product space E of conjugation-invariant functions on
 *        commuting pairs, its canonical basis, and the SL(2,Z) action.
 *
 * E is the value space of the untwisted Dijkgraaf-Witten invariant of a knot
 * complement: a function f on pairs (x,g) with xg = gx, invariant under
 * simultaneous conjugation. Its canonical orthonormal basis is indexed by a
 * conjugacy class together with an irreducible character of the centralizer.
 */

#include "dwlink/group.hpp"

#include <memory>
#include <vector>

namespace dwlink {

/// Enumeration of commuting pairs of a group, in lexicographic element order.
class PairSpace {
  public:
    explicit PairSpace(GroupPtr g);

    const FiniteGroup& group() const { return *group_; }
    GroupPtr group_ptr() const { return group_; }
    int count() const { return static_cast<int>(pairs_.size()); }
    std::pair<int, int> pair(int idx) const { return pairs_[idx]; }
    int index(int x, int g) const; // -1 if x,g do not commute

  private:
    GroupPtr group_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> lookup_;
};

using PairSpacePtr = std::shared_ptr<const PairSpace>;

class EVector {
  public:
    explicit EVector(PairSpacePtr space) : space_(std::move(space)) {
        values_ = cvec::Zero(space_->count());
    }
    EVector(PairSpacePtr space, cvec values);

    const PairSpace& space() const { return *space_; }
    PairSpacePtr space_ptr() const { return space_; }
    const cvec& values() const { return values_; }
    cvec& values() { return values_; }

    cplx at(int x, int g) const;
    void set(int x, int g, cplx v);

    /// Max deviation from conjugation invariance (0 for a legal vector).
    double invariance_defect() const;

    EVector& operator+=(const EVector& o);
    EVector& operator*=(cplx s);
    friend EVector operator+(EVector a, const EVector& b) { return a += b; }
    friend EVector operator*(cplx s, EVector a) { return a *= s; }

  private:
    PairSpacePtr space_;
    cvec values_;
};

/// (f1,f2) = (1/#G) sum over commuting pairs of f1 * conj(f2).
cplx inner_product(const EVector& f1, const EVector& f2);

/// (M f)(x,g) = f(x^a g^b, x^c g^d) for M = [[a,b],[c,d]] with det 1.
EVector sl2z_action(const std::array<long long, 4>& m, const EVector& f);

/// Q = [[1,0],[1,1]] applied k times: f(x, x^k g); negative k allowed.
EVector q_twist_power(const EVector& f, long long k);

/// Conjugacy class + centralizer irrep; `ordinal` is the position in the
/// canonical enumeration of simple objects.
struct SimpleIndex {
    int class_idx = 0;
    int irrep_idx = 0;
    int ordinal = 0;
};

/// Classes and centralizer irreps of one group, computed once.
struct GroupData {
    GroupPtr group;
    PairSpacePtr pairs;
    std::vector<ConjugacyClass> classes;
    std::vector<std::vector<UnitaryIrrep>> class_irreps; // per class, canonical order
    std::vector<SimpleIndex> simples;                    // canonical enumeration

    static GroupData build(GroupPtr g, std::uint64_t seed = 0);
};

/// chi_{c,rho}: value at (y, k) is the rho-character of k transported to the
/// centralizer of the class representative; zero off the class.
EVector canonical_basis_vector(const GroupData& gd, const SimpleIndex& idx);

/// All chi_{c,rho} in canonical order.
std::vector<EVector> canonical_basis(const GroupData& gd);

/// Twist eigenvalue theta = chi(x,x)/chi(x,e), checked independent of x.
cplx theta(const GroupData& gd, const SimpleIndex& idx);

/// Number of orbits of commuting pairs under simultaneous conjugation
/// (equals dim E; used as an independent dimension check).
int commuting_pair_orbit_count(const FiniteGroup& g);

/// Coefficients of f in the canonical basis, plus the residual norm.
std::pair<cvec, double> basis_coefficients(const GroupData& gd, const std::vector<EVector>& basis,
                                           const EVector& f);

/// Element of the r-fold tensor power of E: one value per tuple of commuting
/// pairs, addressed in row-major order over the per-component pair index.
class MultiEVector {
  public:
    MultiEVector(PairSpacePtr space, int components);

    int components() const { return r_; }
    const PairSpace& space() const { return *space_; }
    cvec& values() { return values_; }
    const cvec& values() const { return values_; }

    long long flat_index(const std::vector<int>& pair_indices) const;
    cplx at(const std::vector<int>& pair_indices) const { return values_(flat_index(pair_indices)); }

    /// Accumulate an outer product of single-component vectors, scaled.
    void add_outer(cplx scale, const std::vector<const EVector*>& factors);

    /// Apply Q^{k_s} on tensor slot s, for all slots.
    MultiEVector q_twist(const std::vector<long long>& powers) const;

  private:
    PairSpacePtr space_;
    int r_;
    cvec values_;
};

} // namespace dwlink
