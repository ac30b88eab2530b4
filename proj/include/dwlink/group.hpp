#pragma once

/**
 * @file group.hpp
 * @brief Finite groups as multiplication tables, conjugacy structure, and
 *        explicit unitary irreducible representations.
 *
 * Groups are given by a fixed element ordering and a full multiplication
 * table; the ordering is chosen at construction and never changes, so every
 * basis built downstream (class functions, graded modules, intertwiners) is
 * deterministic. Irreducible representations come from explicit formulas for
 * cyclic and dihedral groups and from a seeded decomposition of the regular
 * representation otherwise.
 */

#include "dwlink/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dwlink {

class FiniteGroup {
  public:
    FiniteGroup(std::string name, std::vector<int> mul_table,
                std::vector<std::string> labels = {});

    const std::string& name() const { return name_; }
    int order() const { return n_; }
    int mul(int a, int b) const { return mul_[a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return e_; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); } // g x g^-1
    int power(int a, long long k) const;
    const std::string& label(int a) const { return labels_[a]; }

    bool commute(int a, int b) const { return mul(a, b) == mul(b, a); }

    // Throws on any violated group axiom; cheap for order <= 64.
    void validate() const;

  private:
    std::string name_;
    int n_;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::vector<std::string> labels_;
    int e_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Supported specs: "Z<n>", "D<n>", "S3", "S4", "Q8", "file:<path>".
GroupPtr build_named_group(const std::string& spec);

/// Parse a plain-text multiplication table: first line N, then N rows of N indices.
GroupPtr group_from_table_text(const std::string& text, const std::string& name);

struct ConjugacyClass {
    int representative = 0;            // minimal member under element order
    std::vector<int> members;          // sorted
    GroupPtr centralizer;              // subgroup of the representative's centralizer
    std::vector<int> embed;            // centralizer element -> parent element
    std::vector<int> witness;          // per member y: k with k rep k^-1 = y
};

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g);

struct UnitaryIrrep {
    int dim = 1;
    std::vector<cmat> matrices;        // one unitary matrix per group element
    std::vector<cplx> character;       // per element

    cplx char_at(int g) const { return character[g]; }
};

/**
 * Complete list of pairwise non-isomorphic unitary irreps, deterministically
 * ordered by (dimension, then quantized character vector). `seed` feeds the
 * regular-representation fallback used for groups without a closed-form
 * construction.
 */
std::vector<UnitaryIrrep> irreps(const FiniteGroup& g, std::uint64_t seed = 0);

/// Verify hom property, unitarity, and irreducibility of one irrep.
void validate_irrep(const FiniteGroup& g, const UnitaryIrrep& rep, double tol = kTol);

} // namespace dwlink
