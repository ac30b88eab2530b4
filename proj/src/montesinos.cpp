#include "dwlink/montesinos.hpp"

#include <numeric>
#include <sstream>

namespace dwlink {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

long long ceil_div(long long a, long long b) {
    return -floor_div(-a, b);
}

} // namespace

Fraction normalize_fraction(long long p, long long q) {
    if (q == 0) throw std::invalid_argument("fraction with zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    if (std::gcd(std::llabs(p), q) != 1)
        throw std::invalid_argument("fraction must be in lowest terms: " + std::to_string(p) + "/" +
                                    std::to_string(q));
    return Fraction{p, q};
}

MontesinosSpec MontesinosSpec::parse(const std::string& text) {
    MontesinosSpec spec;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string trimmed;
        for (char c : item)
            if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
        if (trimmed.empty()) continue;
        auto slash = trimmed.find('/');
        long long p, q = 1;
        try {
            if (slash == std::string::npos) {
                p = std::stoll(trimmed);
            } else {
                p = std::stoll(trimmed.substr(0, slash));
                q = std::stoll(trimmed.substr(slash + 1));
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("bad fraction: " + item);
        }
        spec.fractions.push_back(normalize_fraction(p, q));
    }
    if (spec.fractions.empty()) throw std::invalid_argument("empty fraction list");
    return spec;
}

std::string MontesinosSpec::to_string() const {
    std::string out;
    for (size_t i = 0; i < fractions.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(fractions[i].p) + "/" + std::to_string(fractions[i].q);
    }
    return out;
}

std::vector<long long> continued_fraction(const Fraction& f) {
    long long P = f.p, Q = f.q;
    std::vector<long long> out;
    while (Q != 1) {
        long long s = ceil_div(P, Q);
        long long r = s * Q - P; // in (0, Q): P/Q is never an integer here
        out.push_back(s);
        P = Q;
        Q = r;
    }
    out.push_back(P);
    std::reverse(out.begin(), out.end());
    Fraction back = continued_fraction_value(out);
    if (back.p != f.p || back.q != f.q)
        throw std::logic_error("continued fraction does not reconstruct its input");
    return out;
}

std::vector<long long> continued_fraction_alt(const Fraction& f) {
    std::vector<long long> out;
    std::function<void(long long, long long)> rec = [&](long long P, long long Q) {
        if (std::llabs(Q) == 1) {
            out.push_back(P * (Q < 0 ? -1 : 1));
            return;
        }
        // nearest integer, ties toward +infinity
        long long s = floor_div(2 * P + Q, 2 * Q);
        long long r = s * Q - P;
        rec(Q, r);
        out.push_back(s);
    };
    rec(f.p, f.q);
    Fraction back = continued_fraction_value(out);
    if (back.p != f.p || back.q != f.q)
        throw std::logic_error("alternate continued fraction does not reconstruct its input");
    return out;
}

Fraction continued_fraction_value(const std::vector<long long>& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("empty continued fraction");
    // [[s1,...,sk]] = sk - 1/[[s1,...,s_{k-1}]]
    long long num = coeffs[0], den = 1;
    for (size_t l = 1; l < coeffs.size(); ++l) {
        if (num == 0) throw std::invalid_argument("continued fraction hits a zero convergent");
        long long new_num = coeffs[l] * num - den;
        long long new_den = num;
        num = new_num;
        den = new_den;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(std::llabs(num), std::llabs(den));
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Fraction{num, den};
}

long long mu(const Fraction& f) {
    auto coeffs = continued_fraction(f);
    return std::accumulate(coeffs.begin(), coeffs.end(), 0LL);
}

namespace {

TanglePtr h3(TanglePtr a, TanglePtr b, TanglePtr c) {
    return tangle_h(tangle_h(std::move(a), std::move(b)), std::move(c));
}

TanglePtr id_leaf() {
    return tangle_leaf(TangleKind::Id);
}

} // namespace

RationalBuild build_rational_tangle(const Fraction& f) {
    RationalBuild rb;
    rb.coeffs = continued_fraction(f);
    TanglePtr acc;
    for (size_t l = 0; l < rb.coeffs.size(); ++l) {
        long long s = rb.coeffs[l];
        TanglePtr stack;
        std::vector<const TangleNode*> leaves;
        std::array<const TangleNode*, 2> entry{};
        if (s == 0) {
            TanglePtr i1 = id_leaf(), i2 = id_leaf();
            entry = {i1.get(), i2.get()};
            stack = tangle_h(i1, i2);
        } else {
            TangleKind kind = s > 0 ? TangleKind::CrossPos : TangleKind::CrossNeg;
            TanglePtr first = tangle_leaf(kind);
            leaves.push_back(first.get());
            stack = first;
            for (long long step = 1; step < std::llabs(s); ++step) {
                TanglePtr c = tangle_leaf(kind);
                leaves.push_back(c.get());
                stack = tangle_v(c, stack);
            }
            entry = {leaves.front(), leaves.front()};
        }
        acc = (l == 0) ? stack : tangle_v(stack, acc);
        // quarter-turn wrapper, matching the desugaring of r(...)
        acc = tangle_v(h3(tangle_leaf(TangleKind::Cap), id_leaf(), id_leaf()),
                       tangle_v(h3(id_leaf(), acc, id_leaf()),
                                h3(id_leaf(), id_leaf(), tangle_leaf(TangleKind::Cup))));
        rb.level_crossings.push_back(std::move(leaves));
        rb.level_entry_leaves.push_back(entry);
    }
    rb.root = acc;
    return rb;
}

MontesinosBuild build_montesinos(const MontesinosSpec& spec) {
    if (spec.fractions.empty()) throw std::invalid_argument("empty fraction list");
    MontesinosBuild mb;
    TanglePtr acc;
    for (size_t i = 0; i < spec.fractions.size(); ++i) {
        RationalBuild rb = build_rational_tangle(spec.fractions[i]);
        acc = (i == 0) ? rb.root : tangle_v(rb.root, acc);
        mb.parts.push_back(std::move(rb));
    }
    mb.closed = closure_around(acc, 2);
    return mb;
}

TanglePtr montesinos_expr(const MontesinosSpec& spec) {
    TanglePtr acc;
    for (size_t i = 0; i < spec.fractions.size(); ++i) {
        auto coeffs = continued_fraction(spec.fractions[i]);
        TanglePtr part;
        for (size_t l = 0; l < coeffs.size(); ++l) {
            TanglePtr twist = tangle_twist(coeffs[l]);
            part = (l == 0) ? tangle_rot(twist) : tangle_rot(tangle_v(twist, part));
        }
        acc = (i == 0) ? part : tangle_v(part, acc);
    }
    return tangle_close(acc);
}

namespace {

// The alternating crossing/quarter-turn recursion for one rational tangle,
// reading boundary colors out of the surrounding analysis.
RationalMorphism rational_recursion(const TangleAnalysis& an, const RationalBuild& rb,
                                    const std::vector<int>& colors, const CategoryContext& ctx) {
    int c1 = -1, c2 = -1, c3 = -1, c4 = -1;
    Morphism g;
    for (size_t l = 0; l < rb.coeffs.size(); ++l) {
        auto [la, lb] = rb.level_entry_leaves[l];
        int e1, e2;
        if (la == lb) {
            const LeafPorts& lp = an.ports_of(la);
            e1 = effective_color(an, lp.src[0], colors, ctx);
            e2 = effective_color(an, lp.src[1], colors, ctx);
        } else {
            e1 = effective_color(an, an.ports_of(la).src[0], colors, ctx);
            e2 = effective_color(an, an.ports_of(lb).src[0], colors, ctx);
        }
        if (l == 0) {
            c1 = c3 = e1;
            c2 = c4 = e2;
            g = Morphism::identity({ctx.simple(c1), ctx.simple(c2)});
        } else if (e1 != c3 || e2 != c4) {
            throw numeric_error("rational tangle recursion: boundary colors fell out of step");
        }
        long long s = rb.coeffs[l];
        for (long long step = 0; step < std::llabs(s); ++step) {
            Morphism r = s > 0 ? braiding(ctx.simple(c3), ctx.simple(c4))
                               : braiding_inverse(ctx.simple(c3), ctx.simple(c4));
            g = compose(r, g);
            std::swap(c3, c4);
        }
        g = ctx.rot_relabeled(g, c1, c2, c3, c4);
        int n1 = ctx.star(c3), n2 = c1, n3 = c4, n4 = ctx.star(c2);
        c1 = n1;
        c2 = n2;
        c3 = n3;
        c4 = n4;
    }
    RationalMorphism rm{std::move(g), c1, c2, c3, c4, {}};
    rm.blocks = ctx.phi(rm.morphism, c1, c2, c3, c4);
    return rm;
}

} // namespace

RationalMorphism rational_tangle_morphism(const Fraction& f, int color,
                                          const CategoryContext& ctx) {
    RationalBuild rb = build_rational_tangle(f);
    TangleAnalysis an(rb.root);
    std::vector<int> colors(an.component_count(), color);
    return rational_recursion(an, rb, colors, ctx);
}

MontesinosResult montesinos_invariant(const MontesinosSpec& spec, const CategoryContext& ctx) {
    MontesinosBuild mb = build_montesinos(spec);
    TangleAnalysis an(mb.closed);
    int r = an.component_count();
    MontesinosResult out{MultiEVector(ctx.pairs(), r)};
    out.knot = (r == 1);
    out.writhe = an.total_writhe();

    std::vector<int> colors(r, 0);
    double inv_order = 1.0 / ctx.group().order();
    while (true) {
        Morphism g;
        int b1 = -1, b2 = -1, t3 = -1, t4 = -1;
        for (size_t part = 0; part < mb.parts.size(); ++part) {
            RationalMorphism rm = rational_recursion(an, mb.parts[part], colors, ctx);
            if (part == 0) {
                g = rm.morphism;
                b1 = rm.c1;
                b2 = rm.c2;
            } else {
                if (rm.c1 != t3 || rm.c2 != t4)
                    throw numeric_error("montesinos composite does not chain");
                g = compose(rm.morphism, g);
            }
            t3 = rm.c3;
            t4 = rm.c4;
        }
        if (b1 != t3 || b2 != t4)
            throw numeric_error("montesinos closure: boundary colors do not match");
        BlockMatrix blocks = ctx.phi(g, b1, b2, t3, t4);
        cplx f = 0;
        for (int j = 0; j < ctx.simple_count(); ++j) {
            if (blocks.blocks[j].size() == 0) continue;
            f += static_cast<double>(ctx.dim_of(j)) * blocks.blocks[j].trace();
        }
        out.scalars.push_back(f);
        out.scalar_real.push_back(std::abs(f.imag()) < kTol * 100);
        out.scalar_nonneg.push_back(f.real() > -kTol * 100);
        std::vector<const EVector*> factors;
        for (int s = 0; s < r; ++s) factors.push_back(&ctx.chi(colors[s]));
        out.invariant.add_outer(f * inv_order, factors);

        int slot = r - 1;
        while (slot >= 0 && ++colors[slot] == ctx.simple_count()) colors[slot--] = 0;
        if (slot < 0) break;
    }
    return out;
}

bool is_knot(const MontesinosSpec& spec) {
    MontesinosBuild mb = build_montesinos(spec);
    TangleAnalysis an(mb.closed);
    return an.component_count() == 1;
}

bool writhe_parity_check(const MontesinosSpec& spec) {
    long long mu_sum = 0;
    for (const auto& f : spec.fractions) mu_sum += mu(f);
    MontesinosBuild mb = build_montesinos(spec);
    TangleAnalysis an(mb.closed);
    long long w = an.total_writhe();
    return ((mu_sum - w) % 2) == 0;
}

} // namespace dwlink
