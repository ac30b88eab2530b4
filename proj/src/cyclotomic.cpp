#include "dwlink/cyclotomic.hpp"

#include <cmath>

namespace dwlink {

namespace {

using Poly = std::vector<mpq_class>; // coefficient list, low degree first

void trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// exact division, remainder must vanish
Poly poly_div(const Poly& num, const Poly& den) {
    Poly rem = num;
    Poly quot(num.size() > den.size() ? num.size() - den.size() + 1 : 1, mpq_class(0));
    for (int k = static_cast<int>(rem.size()) - 1; k >= static_cast<int>(den.size()) - 1; --k) {
        mpq_class c = rem[k] / den.back();
        quot[k - den.size() + 1] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < den.size(); ++j) rem[k - den.size() + 1 + j] -= c * den[j];
    }
    trim(rem);
    if (!(rem.size() == 1 && rem[0] == 0)) throw std::logic_error("cyclotomic division not exact");
    trim(quot);
    return quot;
}

// Phi_m by dividing x^m - 1 by the cyclotomic polynomials of proper divisors.
Poly cyclotomic_poly(int m) {
    Poly num(m + 1, mpq_class(0));
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        Poly phi_d = cyclotomic_poly(d);
        num = poly_div(num, phi_d);
    }
    return num;
}

} // namespace

CycField::CycField(int n_odd) : n_(n_odd), two_n_(2 * n_odd) {
    if (n_ < 1 || n_ % 2 == 0) throw std::invalid_argument("cyclotomic field requires odd n");
    Poly phi = cyclotomic_poly(two_n_);
    degree_ = static_cast<int>(phi.size()) - 1;
    // reduction table for z^j, j = 0 .. 2*two_n
    powers_.assign(2 * two_n_ + 1, {});
    for (int j = 0; j <= 2 * two_n_; ++j) {
        if (j < degree_) {
            std::vector<mpq_class> v(degree_, mpq_class(0));
            v[j] = 1;
            powers_[j] = std::move(v);
        } else {
            // z^j = z * z^{j-1} reduced by phi
            std::vector<mpq_class> prev = powers_[j - 1];
            std::vector<mpq_class> v(degree_, mpq_class(0));
            // multiply by z: shift, then reduce the overflow coefficient
            mpq_class top = prev[degree_ - 1];
            for (int k = degree_ - 1; k >= 1; --k) v[k] = prev[k - 1];
            v[0] = 0;
            if (top != 0)
                for (int k = 0; k < degree_; ++k) v[k] -= top * phi[k];
            powers_[j] = std::move(v);
        }
    }
}

CycFieldPtr CycField::make(int n_odd) {
    return CycFieldPtr(new CycField(n_odd));
}

Cyc CycField::zero() const {
    return Cyc(shared_from_this(), std::vector<mpq_class>(degree_, mpq_class(0)));
}

Cyc CycField::one() const {
    return rational(mpq_class(1));
}

Cyc CycField::rational(const mpq_class& q) const {
    std::vector<mpq_class> v(degree_, mpq_class(0));
    v[0] = q;
    return Cyc(shared_from_this(), std::move(v));
}

Cyc CycField::root2n(long long k) const {
    long long r = k % two_n_;
    if (r < 0) r += two_n_;
    return Cyc(shared_from_this(), powers_[r]);
}

Cyc CycField::zeta_half(long long k) const {
    // zeta^{1/2} = zeta^{(n+1)/2}; as a 2n-th root that is zeta_{2n}^{n+1}
    long long e = (static_cast<long long>(n_) + 1) % (2 * n_);
    return root2n(e * k);
}

Cyc::Cyc(CycFieldPtr field, std::vector<mpq_class> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != field_->degree())
        throw std::invalid_argument("cyclotomic coefficient vector has wrong length");
}

Cyc Cyc::operator+(const Cyc& o) const {
    std::vector<mpq_class> v = coeffs_;
    for (size_t i = 0; i < v.size(); ++i) v[i] += o.coeffs_[i];
    return Cyc(field_, std::move(v));
}

Cyc Cyc::operator-(const Cyc& o) const {
    std::vector<mpq_class> v = coeffs_;
    for (size_t i = 0; i < v.size(); ++i) v[i] -= o.coeffs_[i];
    return Cyc(field_, std::move(v));
}

Cyc Cyc::operator-() const {
    std::vector<mpq_class> v = coeffs_;
    for (auto& c : v) c = -c;
    return Cyc(field_, std::move(v));
}

Cyc Cyc::operator*(const Cyc& o) const {
    int deg = field_->degree();
    std::vector<mpq_class> conv(2 * deg - 1, mpq_class(0));
    for (int i = 0; i < deg; ++i) {
        if (coeffs_[i] == 0) continue;
        for (int j = 0; j < deg; ++j) {
            if (o.coeffs_[j] == 0) continue;
            conv[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    std::vector<mpq_class> v(deg, mpq_class(0));
    for (int k = 0; k < static_cast<int>(conv.size()); ++k) {
        if (conv[k] == 0) continue;
        const auto& pw = field_->power_vector(k);
        for (int t = 0; t < deg; ++t) v[t] += conv[k] * pw[t];
    }
    return Cyc(field_, std::move(v));
}

bool Cyc::operator==(const Cyc& o) const {
    return coeffs_ == o.coeffs_;
}

Cyc Cyc::scaled(const mpq_class& s) const {
    std::vector<mpq_class> v = coeffs_;
    for (auto& c : v) c *= s;
    return Cyc(field_, std::move(v));
}

Cyc Cyc::conj() const {
    int m = field_->conductor();
    int deg = field_->degree();
    std::vector<mpq_class> v(deg, mpq_class(0));
    for (int k = 0; k < deg; ++k) {
        if (coeffs_[k] == 0) continue;
        const auto& pw = field_->power_vector((m - k) % m);
        for (int t = 0; t < deg; ++t) v[t] += coeffs_[k] * pw[t];
    }
    return Cyc(field_, std::move(v));
}

bool Cyc::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool Cyc::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

mpq_class Cyc::rational_value() const {
    if (!is_rational()) throw numeric_error("cyclotomic element is not rational");
    return coeffs_[0];
}

long long Cyc::integer_value() const {
    mpq_class q = rational_value();
    if (q.get_den() != 1) throw numeric_error("cyclotomic element is not an integer");
    if (!q.get_num().fits_slong_p()) throw numeric_error("integer out of range");
    return q.get_num().get_si();
}

cplx Cyc::to_complex() const {
    double angle_unit = 2.0 * 3.14159265358979323846264338327950288 / field_->conductor();
    cplx acc = 0;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        double c = coeffs_[k].get_d();
        acc += c * cplx(std::cos(angle_unit * k), std::sin(angle_unit * k));
    }
    return acc;
}

} // namespace dwlink
