#pragma once

/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in the 2n-th cyclotomic field (n odd), with the
 *        square root of the primitive n-th root of unity resolved as
 *        zeta^{1/2} := zeta^{(n+1)/2}.
 *
 * Elements are rational coefficient vectors modulo the 2n-th cyclotomic
 * polynomial. Ring operations are exact; embedding into complex doubles is
 * provided for cross-checks against the floating-point engine.
 */

#include "dwlink/linalg.hpp"

#include <gmpxx.h>

#include <memory>
#include <vector>

namespace dwlink {

class CycField;
using CycFieldPtr = std::shared_ptr<const CycField>;

class Cyc {
  public:
    Cyc() = default;
    Cyc(CycFieldPtr field, std::vector<mpq_class> coeffs);

    const CycFieldPtr& field() const { return field_; }
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }

    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator*(const Cyc& o) const;
    Cyc operator-() const;
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
    bool operator==(const Cyc& o) const;

    Cyc scaled(const mpq_class& s) const;
    Cyc conj() const;

    bool is_zero() const;
    bool is_rational() const;
    /// The rational value; throws when the element is irrational.
    mpq_class rational_value() const;
    /// Exact integer value; throws when not a rational integer.
    long long integer_value() const;

    cplx to_complex() const;

  private:
    CycFieldPtr field_;
    std::vector<mpq_class> coeffs_; // basis 1, z, ..., z^{deg-1}, z = zeta_{2n}
};

class CycField : public std::enable_shared_from_this<CycField> {
  public:
    static CycFieldPtr make(int n_odd);

    int n() const { return n_; }
    int conductor() const { return two_n_; }
    int degree() const { return degree_; }

    Cyc zero() const;
    Cyc one() const;
    Cyc rational(const mpq_class& q) const;
    Cyc integer(long long v) const { return rational(mpq_class(static_cast<long>(v))); }

    /// zeta_{2n}^k (any integer k).
    Cyc root2n(long long k) const;
    /// zeta_n^k = zeta_{2n}^{2k}.
    Cyc zeta(long long k) const { return root2n(2 * k); }
    /// (zeta^{1/2})^k = zeta_n^{k (n+1)/2}, the fixed square root convention.
    Cyc zeta_half(long long k) const;

    /// Reduction of z^j for 0 <= j < 2*conductor, as a coefficient vector.
    const std::vector<mpq_class>& power_vector(int j) const { return powers_[j]; }

  private:
    explicit CycField(int n_odd);
    int n_, two_n_, degree_;
    std::vector<std::vector<mpq_class>> powers_;
};

} // namespace dwlink
