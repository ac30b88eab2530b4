#include "dwlink/oracle.hpp"

#include <functional>
#include <numeric>

namespace dwlink {

namespace {

void swap_rows(IntMatrix& m, IntMatrix& u, int a, int b) {
    m.row(a).swap(m.row(b));
    u.row(a).swap(u.row(b));
}

void swap_cols(IntMatrix& m, IntMatrix& v, int a, int b) {
    m.col(a).swap(m.col(b));
    v.col(a).swap(v.col(b));
}

void add_row(IntMatrix& m, IntMatrix& u, int dst, int src, long long f) {
    m.row(dst) += f * m.row(src);
    u.row(dst) += f * u.row(src);
}

void add_col(IntMatrix& m, IntMatrix& v, int dst, int src, long long f) {
    m.col(dst) += f * m.col(src);
    v.col(dst) += f * v.col(src);
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
    IntMatrix m = input;
    int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
    IntMatrix u = IntMatrix::Identity(rows, rows);
    IntMatrix v = IntMatrix::Identity(cols, cols);

    int t = 0;
    int rank_bound = std::min(rows, cols);
    long long rounds = 0;
    while (t < rank_bound) {
        if (++rounds > 100000) throw numeric_error("smith normal form did not settle");
        // find the minimal nonzero entry in the remaining block
        int pr = -1, pc = -1;
        long long best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                long long a = std::llabs(m(i, j));
                if (a != 0 && (best == 0 || a < best)) {
                    best = a;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break; // all zero
        swap_rows(m, u, t, pr);
        swap_cols(m, v, t, pc);
        bool dirty = false;
        for (int i = t + 1; i < rows; ++i) {
            long long q = m(i, t) / m(t, t);
            if (q != 0) add_row(m, u, i, t, -q);
            if (m(i, t) != 0) dirty = true;
        }
        for (int j = t + 1; j < cols; ++j) {
            long long q = m(t, j) / m(t, t);
            if (q != 0) add_col(m, v, j, t, -q);
            if (m(t, j) != 0) dirty = true;
        }
        if (dirty) continue; // smaller remainders appeared; pick a new pivot
        // divisibility: fold any entry the pivot does not divide into column t
        bool fixed = true;
        for (int i = t + 1; i < rows && fixed; ++i)
            for (int j = t + 1; j < cols && fixed; ++j)
                if (m(i, j) % m(t, t) != 0) {
                    add_row(m, u, t, i, 1);
                    fixed = false;
                }
        if (!fixed) continue;
        if (m(t, t) < 0) {
            m.row(t) *= -1;
            u.row(t) *= -1;
        }
        ++t;
    }
    SmithForm out{std::move(m), std::move(u), std::move(v)};
    // exactness check: U * input * V reconstructs the diagonal form
    if (out.left * input * out.right != out.d)
        throw numeric_error("smith normal form reconstruction failed");
    for (int i = 0; i + 1 < rank_bound; ++i) {
        long long a = out.d(i, i), b = out.d(i + 1, i + 1);
        if (a == 0 && b != 0) throw numeric_error("smith form: zero before nonzero");
        if (a != 0 && b % a != 0) throw numeric_error("smith form: divisibility violated");
    }
    return out;
}

IntMatrix fox_matrix(const LinkDiagram& d) {
    IntMatrix m = IntMatrix::Zero(std::max<size_t>(d.crossings.size(), 1), d.num_arcs);
    for (size_t c = 0; c < d.crossings.size(); ++c) {
        m(c, d.crossings[c].over) += 2;
        m(c, d.crossings[c].under_in) -= 1;
        m(c, d.crossings[c].under_out) -= 1;
    }
    return m;
}

long long fox_count(const LinkDiagram& d, long long n) {
    if (n < 1) throw std::invalid_argument("fox_count needs n >= 1");
    IntMatrix m = fox_matrix(d);
    SmithForm s = smith_normal_form(m);
    int rank = 0;
    int bound = static_cast<int>(std::min(s.d.rows(), s.d.cols()));
    long long count = 1;
    for (int i = 0; i < bound; ++i) {
        if (s.d(i, i) == 0) break;
        ++rank;
        count *= std::gcd(s.d(i, i), n);
    }
    for (int free = rank; free < d.num_arcs; ++free) count *= n;
    return count;
}

long long fox_count_exhaustive(const LinkDiagram& d, long long n) {
    long long total = 1;
    for (int a = 0; a < d.num_arcs; ++a) {
        total *= n;
        if (total > 10'000'000) throw std::invalid_argument("diagram too large for exhaustion");
    }
    long long count = 0;
    std::vector<long long> v(d.num_arcs, 0);
    for (long long code = 0; code < total; ++code) {
        long long rem = code;
        for (int a = 0; a < d.num_arcs; ++a) {
            v[a] = rem % n;
            rem /= n;
        }
        bool ok = true;
        for (const auto& c : d.crossings)
            if ((2 * v[c.over] - v[c.under_in] - v[c.under_out]) % n != 0) {
                ok = false;
                break;
            }
        if (ok) ++count;
    }
    return count;
}

WirtingerPresentation wirtinger_presentation(const LinkDiagram& d) {
    WirtingerPresentation p;
    p.generators = d.num_arcs;
    p.diagram = d;
    return p;
}

std::vector<std::pair<int, int>> WirtingerPresentation::longitude(int component,
                                                                  bool zero_framed) const {
    std::vector<std::pair<int, int>> word = diagram.component_longitude[component];
    if (zero_framed) {
        long long w = diagram.component_self_writhe[component];
        if (w != 0) word.emplace_back(diagram.component_meridian[component], -static_cast<int>(w));
    }
    return word;
}

namespace {

int eval_word(const std::vector<std::pair<int, int>>& word, const std::vector<int>& img,
              const FiniteGroup& g) {
    int acc = g.identity();
    for (auto [arc, exp] : word) acc = g.mul(acc, g.power(img[arc], exp));
    return acc;
}

} // namespace

long long hom_count(const WirtingerPresentation& p, const FiniteGroup& g,
                    const std::vector<std::optional<PeripheralConstraint>>& constraints) {
    const LinkDiagram& d = p.diagram;
    if (!constraints.empty() && static_cast<int>(constraints.size()) != d.num_components)
        throw std::invalid_argument("hom_count: one constraint slot per component");

    // arcs of one component all map into one conjugacy class; enumerate the
    // meridian image (fixed or free) and the remaining arcs over its class
    auto classes = conjugacy_classes(g);
    std::vector<int> class_of(g.order());
    for (size_t c = 0; c < classes.size(); ++c)
        for (int x : classes[c].members) class_of[x] = static_cast<int>(c);

    std::vector<std::vector<int>> comp_arcs(d.num_components);
    for (int a = 0; a < d.num_arcs; ++a) comp_arcs[d.arc_component[a]].push_back(a);

    // candidate meridian images per component
    std::vector<std::vector<int>> meridian_choices(d.num_components);
    for (int c = 0; c < d.num_components; ++c) {
        if (!constraints.empty() && constraints[c]) {
            meridian_choices[c] = {constraints[c]->meridian_image};
        } else {
            meridian_choices[c].resize(g.order());
            std::iota(meridian_choices[c].begin(), meridian_choices[c].end(), 0);
        }
    }

    long long count = 0;
    std::vector<int> img(d.num_arcs, 0);

    std::function<void(int)> per_component = [&](int comp) {
        if (comp == d.num_components) {
            for (const auto& cr : d.crossings) {
                int c = img[cr.over];
                int expect = cr.sign > 0 ? g.mul(g.mul(c, img[cr.under_in]), g.inv(c))
                                         : g.mul(g.mul(g.inv(c), img[cr.under_in]), c);
                if (img[cr.under_out] != expect) return;
            }
            if (!constraints.empty()) {
                for (int c = 0; c < d.num_components; ++c) {
                    if (!constraints[c] || !constraints[c]->longitude_image) continue;
                    auto word = p.longitude(c, constraints[c]->zero_framed_longitude);
                    if (eval_word(word, img, g) != *constraints[c]->longitude_image) return;
                }
            }
            ++count;
            return;
        }
        for (int m_img : meridian_choices[comp]) {
            const auto& cls = classes[class_of[m_img]].members;
            // search-space guard
            double size = 1;
            for (size_t i = 1; i < comp_arcs[comp].size(); ++i) size *= cls.size();
            if (size > static_cast<double>(kHomSearchGuard))
                throw std::invalid_argument("hom_count: search space exceeds the guard");
            std::function<void(size_t)> assign = [&](size_t idx) {
                if (idx == comp_arcs[comp].size()) {
                    per_component(comp + 1);
                    return;
                }
                int arc = comp_arcs[comp][idx];
                if (arc == d.component_meridian[comp]) {
                    img[arc] = m_img;
                    assign(idx + 1);
                    return;
                }
                for (int x : cls) {
                    img[arc] = x;
                    assign(idx + 1);
                }
            };
            assign(0);
        }
    };
    per_component(0);
    return count;
}

OracleReport dw_vs_homcount(const TanglePtr& closed_expr, const CategoryContext& ctx) {
    TangleAnalysis an(desugar(closed_expr));
    OracleReport rep;
    rep.diagram = diagram_from_analysis(an);
    LinkInvariant z = dw_link_invariant(closed_expr, ctx);
    rep.writhes = z.writhes;
    for (int c = 0; c < rep.diagram.num_components; ++c)
        if (rep.diagram.component_self_writhe[c] != -z.writhes[c])
            throw numeric_error("diagram and tangle writhe bookkeeping disagree");

    WirtingerPresentation p = wirtinger_presentation(rep.diagram);
    MultiEVector corrected = z.writhe_corrected();
    const MultiEVector& raw = z.raw;
    const PairSpace& ps = *ctx.pairs();
    const FiniteGroup& g = ctx.group();
    int r = rep.diagram.num_components;

    long long total = corrected.values().size();
    std::vector<int> tuple(r, 0);
    std::vector<long long> h0_table(total), hbb_table(total);
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        for (int i = r - 1; i >= 0; --i) {
            tuple[i] = static_cast<int>(rem % ps.count());
            rem /= ps.count();
        }
        std::vector<std::optional<PeripheralConstraint>> cons_zero(r), cons_bb(r);
        for (int i = 0; i < r; ++i) {
            auto [x, h] = ps.pair(tuple[i]);
            cons_zero[i] = PeripheralConstraint{x, h, true};
            cons_bb[i] = PeripheralConstraint{x, h, false};
        }
        h0_table[flat] = hom_count(p, g, cons_zero);
        hbb_table[flat] = hom_count(p, g, cons_bb);
    }

    // For one component the invariant matches the counts pointwise. For
    // several, anything valued in a tensor power of E is invariant under
    // independent per-component conjugation while raw counts are only
    // diagonally invariant, so the comparison goes through the orbit
    // average scaled by one group order per extra component.
    auto reference = [&](const std::vector<long long>& table, long long flat) -> double {
        if (r == 1) return static_cast<double>(table[flat]);
        long long rem = flat;
        for (int i = r - 1; i >= 0; --i) {
            tuple[i] = static_cast<int>(rem % ps.count());
            rem /= ps.count();
        }
        double acc = 0;
        std::vector<int> conj(r, 0);
        while (true) {
            long long idx = 0;
            for (int i = 0; i < r; ++i) {
                auto [x, h] = ps.pair(tuple[i]);
                idx = idx * ps.count() + ps.index(g.conj(conj[i], x), g.conj(conj[i], h));
            }
            acc += static_cast<double>(table[idx]);
            int slot = r - 1;
            while (slot >= 0 && ++conj[slot] == g.order()) conj[slot--] = 0;
            if (slot < 0) break;
        }
        // #G^{r-1} * average over #G^r conjugations
        return acc / g.order();
    };

    for (long long flat = 0; flat < total; ++flat) {
        long long dwc = round_to_int(corrected.values()(flat));
        long long dwr = round_to_int(raw.values()(flat));
        long long h0 = static_cast<long long>(std::llround(reference(h0_table, flat)));
        long long hbb = static_cast<long long>(std::llround(reference(hbb_table, flat)));
        if (std::abs(reference(h0_table, flat) - h0) > 1e-6 ||
            std::abs(reference(hbb_table, flat) - hbb) > 1e-6)
            throw numeric_error("orbit-averaged count is not integral");
        rep.hom_zero_framed.push_back(h0);
        rep.hom_blackboard.push_back(hbb);
        rep.dw_corrected.push_back(dwc);
        rep.dw_raw.push_back(dwr);
        if (h0 != dwc) rep.mismatches_corrected.push_back(flat);
        if (hbb != dwr) rep.mismatches_raw.push_back(flat);
    }
    return rep;
}

} // namespace dwlink
