#include "dwlink/dihedral.hpp"

#include <numeric>

namespace dwlink {

namespace {

long long mod_pos(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

// extended gcd: returns g and x with a x = g (mod m)
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// smallest non-negative solution of a t = b (mod m); gcd(a,m) must divide b
long long solve_mod(long long a, long long b, long long m) {
    a = mod_pos(a, m);
    b = mod_pos(b, m);
    long long x, y;
    long long g = ext_gcd(a == 0 ? m : a, m, x, y);
    if (b % g != 0) throw numeric_error("modular equation has no solution");
    long long m2 = m / g;
    long long t = mod_pos((b / g) % m2 * mod_pos(x, m2) % m2, m2);
    return t;
}

} // namespace

DihedralEngine::DihedralEngine(int n_odd) : n_(n_odd), half_((n_odd - 1) / 2) {
    if (n_ < 3 || n_ % 2 == 0) throw std::invalid_argument("dihedral engine needs odd n >= 3");
    label_count_ = 1 + half_ + half_ * n_;
    field_ = CycField::make(n_);
}

int DihedralEngine::label_r(int r) const {
    if (r < 1 || r > half_) throw std::invalid_argument("label_r out of range");
    return r;
}

int DihedralEngine::label_jt(int j, int t) const {
    if (j < 1 || j > half_ || t < 1 || t > n_) throw std::invalid_argument("label_jt out of range");
    return 1 + half_ + (j - 1) * n_ + (t - 1);
}

std::vector<Cyc> DihedralEngine::phi_R(int sign, long long power) const {
    Cyc s = field_->integer(power % 2 == 0 ? 1 : sign);
    std::vector<Cyc> v(label_count_, s);
    for (int j = 1; j <= half_; ++j)
        for (int t = 1; t <= n_; ++t)
            v[label_jt(j, t)] = s * field_->zeta_half(power * j * t);
    return v;
}

Cyc DihedralEngine::rot_entry(int row, int col) const {
    mpq_class inv_n(1, n_);
    auto jt_of = [&](int label, int& j, int& t) {
        int off = label - 1 - half_;
        j = off / n_ + 1;
        t = off % n_ + 1;
    };
    bool row_unit = row == 0, col_unit = col == 0;
    bool row_r = row >= 1 && row <= half_, col_r = col >= 1 && col <= half_;
    if (col_unit) return field_->rational(inv_n);                       // first column
    if (row_unit) return field_->rational(2 * inv_n);                   // first row, col != 0
    if (row_r && col_r) return field_->rational(2 * inv_n);
    if (row_r && !col_r) {
        int j, t;
        jt_of(col, j, t);
        return (field_->zeta_half(static_cast<long long>(j) * row) +
                field_->zeta_half(-static_cast<long long>(j) * row))
            .scaled(inv_n);
    }
    if (!row_r && col_r) {
        int j, t;
        jt_of(row, j, t);
        return (field_->zeta_half(static_cast<long long>(j) * col) +
                field_->zeta_half(-static_cast<long long>(j) * col))
            .scaled(inv_n);
    }
    int j, t, jp, tp;
    jt_of(row, j, t);
    jt_of(col, jp, tp);
    long long e = static_cast<long long>(j) * tp + static_cast<long long>(jp) * t;
    return (field_->zeta_half(e) + field_->zeta_half(-e)).scaled(inv_n);
}

std::vector<Cyc> DihedralEngine::rot_apply(const std::vector<Cyc>& v) const {
    if (static_cast<int>(v.size()) != label_count_)
        throw std::invalid_argument("rot_apply: wrong block vector length");
    std::vector<Cyc> out(label_count_, field_->zero());
    for (int row = 0; row < label_count_; ++row) {
        Cyc acc = field_->zero();
        for (int col = 0; col < label_count_; ++col) {
            if (v[col].is_zero()) continue;
            acc += rot_entry(row, col) * v[col];
        }
        out[row] = acc;
    }
    return out;
}

std::vector<Cyc> DihedralEngine::rational_recursion(int sign, const Fraction& f) const {
    auto coeffs = continued_fraction(f);
    std::vector<Cyc> v;
    for (size_t l = 0; l < coeffs.size(); ++l) {
        std::vector<Cyc> r = phi_R(sign, coeffs[l]);
        if (l == 0) {
            v = std::move(r);
        } else {
            for (int i = 0; i < label_count_; ++i) v[i] = r[i] * v[i];
        }
        v = rot_apply(v);
    }
    return v;
}

std::vector<Cyc> DihedralEngine::rational_closed_form(int sign, const Fraction& f) const {
    if (f.p == 0)
        throw std::invalid_argument("closed form needs p != 0; use the recursion for 0/1");
    long long d = std::gcd(static_cast<long long>(n_), std::llabs(f.p));
    long long mu_par = mu(f);
    Cyc pref = field_->integer((mu_par % 2 == 0 || sign > 0) ? d : -d);
    std::vector<Cyc> v(label_count_, field_->zero());
    v[0] = pref;
    for (int r = 1; r <= half_; ++r)
        if (r % d == 0) v[label_r(r)] = pref;
    for (int j = 1; j <= half_; ++j) {
        if (j % d != 0) continue;
        for (int t = 1; t <= n_; ++t) {
            if (t % d != 0) continue;
            // zeta^{-q j t / (2p)}: the half-power exponent e solves
            // p e = -q t (mod n), well-defined on the surviving labels
            long long t0 = solve_mod(f.p, -f.q * t, n_);
            v[label_jt(j, t)] = pref * field_->zeta_half(static_cast<long long>(j) * t0);
        }
    }
    return v;
}

Cyc DihedralEngine::montesinos_scalar(int sign, const MontesinosSpec& spec,
                                      bool use_recursion) const {
    std::vector<Cyc> acc(label_count_, field_->one());
    for (const auto& f : spec.fractions) {
        std::vector<Cyc> v =
            (use_recursion || f.p == 0) ? rational_recursion(sign, f) : rational_closed_form(sign, f);
        for (int i = 0; i < label_count_; ++i) acc[i] = acc[i] * v[i];
    }
    Cyc total = field_->zero();
    for (int i = 0; i < label_count_; ++i) {
        if (acc[i].is_zero()) continue;
        total += acc[i].scaled(mpq_class(static_cast<long>(dim_weight(i))));
    }
    return total;
}

long long DihedralEngine::coloring_count_via_dw(const MontesinosSpec& spec) const {
    if (!is_knot(spec))
        throw std::invalid_argument("coloring count via the invariant needs a knot closure");
    bool small = n_ <= 21;
    Cyc f_plus = montesinos_scalar(+1, spec, false);
    Cyc f_minus = montesinos_scalar(-1, spec, false);
    if (small) {
        // closed form against the recursion, exactly
        if (!(montesinos_scalar(+1, spec, true) == f_plus) ||
            !(montesinos_scalar(-1, spec, true) == f_minus))
            throw numeric_error("closed form and recursion disagree");
    }
    long long mu_sum = 0;
    for (const auto& f : spec.fractions) mu_sum += mu(f);
    Cyc expect_minus = (mu_sum % 2 == 0) ? f_plus : -f_plus;
    if (!(f_minus == expect_minus))
        throw numeric_error("sign bookkeeping between the two reflection colors failed");

    MontesinosBuild mb = build_montesinos(spec);
    TangleAnalysis an(mb.closed);
    long long wr = an.total_writhe();

    // the invariant restricted to reflection-class pairs: values at (x, e)
    // and (x, x) for each of the n reflections x, read through the framing
    // correction; chi_{W+-}(x, e) = 1 and chi_{W+-}(x, x) = +-1
    mpq_class two_n(2 * static_cast<long>(n_));
    auto z_at = [&](int power_of_x) {
        // Z(x, x^power): (F+ + (-1)^power F-) / 2n
        Cyc num = (mod_pos(power_of_x, 2) == 0) ? f_plus + f_minus : f_plus - f_minus;
        return num.scaled(mpq_class(1) / two_n);
    };
    // corrected table at (x, g) is Z(x, x^{-wr} g)
    Cyc per_reflection = z_at(static_cast<int>(mod_pos(-wr, 2))) +
                         z_at(static_cast<int>(mod_pos(1 - wr, 2)));
    Cyc total = per_reflection.scaled(mpq_class(static_cast<long>(n_)));
    long long count = total.integer_value();
    if (count != f_plus.integer_value())
        throw numeric_error("coloring count did not reduce to the plus-color scalar");
    if (count < n_) throw numeric_error("coloring count below the trivial count");
    return count;
}

long long coloring_count_formula(long long n, const MontesinosSpec& spec) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("coloring counts need odd n");
    for (const auto& f : spec.fractions)
        if (f.p == 0) throw std::invalid_argument("coloring formula needs all p_i nonzero");
    if (!is_knot(spec))
        throw std::invalid_argument("coloring formula applies to knot closures only");
    long long lcm = 1;
    for (const auto& f : spec.fractions) lcm = std::lcm(lcm, std::llabs(f.p));
    long long big_n = 0;
    for (const auto& f : spec.fractions) big_n += f.q * (lcm / f.p);
    long long gcd_lcm = std::gcd(n, lcm);
    long long prod = n;
    for (const auto& f : spec.fractions) prod *= std::gcd(n, std::llabs(f.p));
    long long count = prod * std::gcd(n / gcd_lcm, std::llabs(big_n)) / gcd_lcm;
    if (count < n) throw numeric_error("coloring formula returned less than the trivial count");
    return count;
}

DihedralCatalogueMap dihedral_catalogue_map(const DihedralEngine& eng, const CategoryContext& ctx) {
    int n = eng.n();
    if (ctx.group().order() != 2 * n)
        throw std::invalid_argument("catalogue map needs the matching dihedral group");
    DihedralCatalogueMap map;
    map.label_to_ordinal.assign(eng.labels(), -1);
    const FiniteGroup& g = ctx.group();
    int half = (n - 1) / 2;

    for (int i = 0; i < ctx.simple_count(); ++i) {
        const auto& cls = ctx.data().classes[ctx.simple_index(i).class_idx];
        size_t csize = cls.members.size();
        if (csize == static_cast<size_t>(n)) {
            if (std::abs(ctx.twist(i) - cplx(1, 0)) < 1e-9) map.w_plus = i;
            if (std::abs(ctx.twist(i) + cplx(1, 0)) < 1e-9) map.w_minus = i;
        } else if (csize == 1 && ctx.dim_of(i) == 1) {
            // unit or sign object: unit has chi(e, b) = 1
            if (std::abs(ctx.chi(i).at(g.identity(), n) - cplx(1, 0)) < 1e-9)
                map.label_to_ordinal[0] = i;
        } else if (csize == 1 && ctx.dim_of(i) == 2) {
            // grade-e two-dimensional object for some r: chi(e, a) = zeta^r + zeta^-r
            for (int r = 1; r <= half; ++r) {
                cplx expect = eng.field()->zeta(r).to_complex() + eng.field()->zeta(-r).to_complex();
                if (std::abs(ctx.chi(i).at(g.identity(), 1) - expect) < 1e-9)
                    map.label_to_ordinal[eng.label_r(r)] = i;
            }
        } else if (csize == 2) {
            // rotation-graded: class of a^j, character value zeta^t at (a^j, a)
            int j = cls.representative; // element index of a^j, 1 <= j <= half
            for (int t = 1; t <= n; ++t) {
                cplx expect = eng.field()->zeta(t).to_complex();
                if (std::abs(ctx.chi(i).at(j, 1) - expect) < 1e-9)
                    map.label_to_ordinal[eng.label_jt(j, t)] = i;
            }
        }
    }
    for (int l = 0; l < eng.labels(); ++l)
        if (map.label_to_ordinal[l] < 0)
            throw numeric_error("catalogue map: unmatched block label " + std::to_string(l));
    if (map.w_plus < 0 || map.w_minus < 0)
        throw numeric_error("catalogue map: reflection-graded objects not found");
    return map;
}

} // namespace dwlink
