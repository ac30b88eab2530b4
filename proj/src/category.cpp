#include "dwlink/category.hpp"

#include <algorithm>

namespace dwlink {

namespace {

// chi_{U (x) V}(x,g) = sum over x1 x2 = x, g commuting with both, of
// chi_U(x1,g) chi_V(x2,g).
EVector product_character(const EVector& a, const EVector& b) {
    const PairSpace& ps = a.space();
    const FiniteGroup& g = ps.group();
    EVector out(a.space_ptr());
    for (int i = 0; i < ps.count(); ++i) {
        auto [x, h] = ps.pair(i);
        cplx acc = 0;
        for (int x1 = 0; x1 < g.order(); ++x1) {
            if (!g.commute(x1, h)) continue;
            int x2 = g.mul(g.inv(x1), x);
            if (!g.commute(x2, h)) continue;
            acc += a.values()(ps.index(x1, h)) * b.values()(ps.index(x2, h));
        }
        out.values()(i) = acc;
    }
    return out;
}

} // namespace

ModulePtr CategoryContext::build_simple(const SimpleIndex& idx) const {
    const FiniteGroup& g = *gd_.group;
    const ConjugacyClass& cls = gd_.classes[idx.class_idx];
    const UnitaryIrrep& rho = gd_.class_irreps[idx.class_idx][idx.irrep_idx];
    std::vector<int> parent_to_cent(g.order(), -1);
    for (size_t i = 0; i < cls.embed.size(); ++i) parent_to_cent[cls.embed[i]] = static_cast<int>(i);
    std::vector<int> member_pos(g.order(), -1);
    for (size_t i = 0; i < cls.members.size(); ++i) member_pos[cls.members[i]] = static_cast<int>(i);

    int d = rho.dim;
    int dim = static_cast<int>(cls.members.size()) * d;
    std::vector<int> grade(dim);
    for (size_t mi = 0; mi < cls.members.size(); ++mi)
        for (int a = 0; a < d; ++a) grade[mi * d + a] = cls.members[mi];

    std::vector<cmat> act(g.order());
    for (int h = 0; h < g.order(); ++h) {
        cmat m = cmat::Zero(dim, dim);
        for (size_t mi = 0; mi < cls.members.size(); ++mi) {
            int y = cls.members[mi];
            int ky = cls.witness[mi];
            int hy = g.conj(h, y);
            int mj = member_pos[hy];
            int khy = cls.witness[mj];
            // h k_y = k_{hy} h0 with h0 in the centralizer of the representative
            int h0 = g.mul(g.inv(khy), g.mul(h, ky));
            int hc = parent_to_cent[h0];
            if (hc < 0) throw std::logic_error("induced module: transport left the centralizer");
            const cmat& r = rho.matrices[hc];
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) m(mj * d + b, mi * d + a) = r(b, a);
        }
        act[h] = std::move(m);
    }
    return std::make_shared<GradedModule>(gd_.group, "V" + std::to_string(idx.ordinal),
                                          std::move(grade), std::move(act));
}

CategoryContext::CategoryContext(GroupPtr g, std::uint64_t seed)
    : gd_(GroupData::build(g, seed)), seed_(seed) {
    int count = static_cast<int>(gd_.simples.size());
    simples_.reserve(count);
    chis_.reserve(count);
    for (int i = 0; i < count; ++i) {
        ModulePtr m = build_simple(gd_.simples[i]);
        m->validate();
        EVector chi_direct = character(*m, gd_.pairs);
        EVector chi_formula = canonical_basis_vector(gd_, gd_.simples[i]);
        if ((chi_direct.values() - chi_formula.values()).cwiseAbs().maxCoeff() > kTol)
            throw numeric_error("simple object character differs from canonical basis vector");
        simples_.push_back(std::move(m));
        chis_.push_back(std::move(chi_formula));
        thetas_.push_back(theta(gd_, gd_.simples[i]));
        catalogue_lookup_[simples_.back().get()] = i;
    }

    // unit object: the trivial character vector (1 on all (e,g))
    for (int i = 0; i < count; ++i) {
        bool is_unit = simples_[i]->dim() == 1 &&
                       simples_[i]->grade_of(0) == g->identity();
        if (is_unit) {
            bool trivial = true;
            for (int a = 0; a < g->order() && trivial; ++a)
                trivial = std::abs(simples_[i]->act(a)(0, 0) - cplx(1, 0)) < kTol;
            if (trivial) {
                unit_idx_ = i;
                break;
            }
        }
    }
    if (unit_idx_ < 0) throw numeric_error("no unit object in the catalogue");

    // star involution via dual characters
    star_.assign(count, -1);
    for (int i = 0; i < count; ++i) {
        EVector chi_dual = character(*dual_of(simples_[i]), gd_.pairs);
        for (int j = 0; j < count; ++j)
            if ((chi_dual.values() - chis_[j].values()).cwiseAbs().maxCoeff() < 1e-6) {
                star_[i] = j;
                break;
            }
        if (star_[i] < 0) throw numeric_error("dual of a simple is not in the catalogue");
    }
    for (int i = 0; i < count; ++i)
        if (star_[star_[i]] != i) throw numeric_error("star map is not an involution");

    // fixed identifications V(i*) -> V(i)^dual
    dual_ident_.resize(count);
    for (int i = 0; i < count; ++i) {
        auto sols = solve_hom(simples_[star_[i]], dual_of(simples_[i]), 1,
                              "dualid|" + std::to_string(i));
        dual_ident_[i] = sols[0];
        cmat should_be_id = dual_ident_[i].adjoint() * dual_ident_[i];
        if (!near(should_be_id, cmat::Identity(dim_of(i), dim_of(i)), 1e-7))
            throw numeric_error("dual identification is not unitary");
    }
}

ModulePtr CategoryContext::dual_of(const ModulePtr& u) const {
    if (auto it = dual_cache_.find(u.get()); it != dual_cache_.end()) return it->second;
    ModulePtr d = dual(u);
    dual_cache_[u.get()] = d;
    dual_cache_[d.get()] = u; // involution closes at the pointer level
    return d;
}

const cmat& CategoryContext::dual_identification(int i) const {
    return dual_ident_[i];
}

int CategoryContext::fusion(int i, int ip, int j) const {
    auto key = std::make_tuple(i, ip, j);
    if (auto it = fusion_cache_.find(key); it != fusion_cache_.end()) return it->second;
    EVector prod = product_character(chis_[i], chis_[ip]);
    for (int jj = 0; jj < simple_count(); ++jj) {
        cplx n = inner_product(prod, chis_[jj]);
        long long v = round_to_int(n);
        if (v < 0) throw numeric_error("negative fusion multiplicity");
        fusion_cache_[std::make_tuple(i, ip, jj)] = static_cast<int>(v);
    }
    return fusion_cache_.at(key);
}

std::vector<cmat> CategoryContext::solve_hom(const ModulePtr& a, const ModulePtr& b, int expected,
                                             const std::string& key) const {
    if (expected == 0) return {};
    const FiniteGroup& g = *gd_.group;
    int da = a->dim(), db = b->dim();
    for (int attempt = 0; attempt < 6; ++attempt) {
        DetRng rng(hash_key(g.name() + "|" + key + "|try" + std::to_string(attempt), seed_ + 1));
        std::vector<cmat> found;
        for (int cand = 0; cand < expected + 2 && static_cast<int>(found.size()) < expected; ++cand) {
            cmat r = cmat::Zero(db, da);
            for (int row = 0; row < db; ++row)
                for (int col = 0; col < da; ++col)
                    if (b->grade_of(row) == a->grade_of(col)) r(row, col) = rng.next_cplx_normal();
            cmat f = cmat::Zero(db, da);
            for (int x = 0; x < g.order(); ++x) f += b->act(x) * r * a->act(x).adjoint();
            f /= static_cast<double>(g.order());
            // Gram-Schmidt against previously accepted solutions
            for (const auto& prev : found) f -= (prev.adjoint() * f).trace() * prev;
            double nrm = f.norm();
            if (nrm < 1e-8) continue;
            f /= nrm;
            found.push_back(std::move(f));
        }
        if (static_cast<int>(found.size()) != expected) continue;
        // Schur normalization kappa^dagger kappa = id, then a fixed phase.
        bool ok = true;
        for (auto& f : found) {
            double lambda = std::real((f.adjoint() * f).trace()) / da;
            if (lambda < 1e-12) {
                ok = false;
                break;
            }
            f /= std::sqrt(lambda);
            cplx lead = 0;
            for (int col = 0; col < da && lead == cplx(0, 0); ++col)
                for (int row = 0; row < db; ++row)
                    if (std::abs(f(row, col)) > 1e-8) {
                        lead = f(row, col);
                        break;
                    }
            if (lead != cplx(0, 0)) f *= std::conj(lead) / std::abs(lead);
        }
        if (ok) return found;
    }
    throw numeric_error("intertwiner solve failed for " + key + " (rank deficiency)");
}

std::vector<cmat> CategoryContext::hom_basis(const ModulePtr& a, int j) const {
    EVector chi_a = character(*a, gd_.pairs);
    int expected = static_cast<int>(round_to_int(inner_product(chi_a, chis_[j])));
    return solve_hom(simples_[j], a, expected, "hom|" + a->name() + "|" + std::to_string(j));
}

const CategoryContext::Beta& CategoryContext::beta(int i, int ip) const {
    auto key = std::make_pair(i, ip);
    if (auto it = beta_cache_.find(key); it != beta_cache_.end()) return it->second;
    ModulePtr w = tensor(simples_[i], simples_[ip]);
    Beta b;
    int offset = 0;
    cmat iso(w->dim(), w->dim());
    for (int j = 0; j < simple_count(); ++j) {
        int n = fusion(i, ip, j);
        if (n == 0) continue;
        auto kappas = solve_hom(simples_[j], w, n,
                                "beta|" + std::to_string(i) + "," + std::to_string(ip) + "|" +
                                    std::to_string(j));
        for (int m = 0; m < n; ++m) {
            b.slots.emplace_back(j, m);
            b.slot_offset.push_back(offset);
            iso.middleCols(offset, dim_of(j)) = kappas[m];
            offset += dim_of(j);
        }
    }
    if (offset != w->dim()) throw numeric_error("fusion dimensions do not fill the tensor product");
    if (!near(iso.adjoint() * iso, cmat::Identity(offset, offset), 1e-7))
        throw numeric_error("intertwiner basis is not an isometry");
    b.iso = std::move(iso);
    return beta_cache_.emplace(key, std::move(b)).first->second;
}

BlockMatrix CategoryContext::phi(const Morphism& f, int i1, int i2, int i3, int i4) const {
    if (f.src.size() != 2 || f.tgt.size() != 2 || f.src[0] != simples_[i1] ||
        f.src[1] != simples_[i2] || f.tgt[0] != simples_[i3] || f.tgt[1] != simples_[i4])
        throw std::invalid_argument("phi: morphism boundary does not match the given colors");
    const Beta& b12 = beta(i1, i2);
    const Beta& b34 = beta(i3, i4);
    cmat m = b34.iso.adjoint() * f.mat * b12.iso;

    BlockMatrix out;
    out.blocks.assign(simple_count(), cmat());
    for (int j = 0; j < simple_count(); ++j) {
        int n12 = fusion(i1, i2, j), n34 = fusion(i3, i4, j);
        out.blocks[j] = cmat::Zero(n34, n12);
    }
    for (size_t srow = 0; srow < b34.slots.size(); ++srow) {
        for (size_t scol = 0; scol < b12.slots.size(); ++scol) {
            auto [jr, mr] = b34.slots[srow];
            auto [jc, mc] = b12.slots[scol];
            cmat sub = m.block(b34.slot_offset[srow], b12.slot_offset[scol], dim_of(jr), dim_of(jc));
            if (jr != jc) {
                if (sub.cwiseAbs().maxCoeff() > 1e-6)
                    throw numeric_error("phi: morphism mixes distinct simple summands");
                continue;
            }
            cplx s = sub.trace() / static_cast<double>(dim_of(jr));
            if ((sub - s * cmat::Identity(dim_of(jr), dim_of(jr))).cwiseAbs().maxCoeff() > 1e-6)
                throw numeric_error("phi: component map is not scalar on a simple summand");
            out.blocks[jr](mr, mc) = s;
        }
    }
    return out;
}

Morphism CategoryContext::phi_inverse(const BlockMatrix& blocks, int i1, int i2, int i3,
                                      int i4) const {
    const Beta& b12 = beta(i1, i2);
    const Beta& b34 = beta(i3, i4);
    cmat m = cmat::Zero(b34.iso.cols(), b12.iso.cols());
    for (size_t srow = 0; srow < b34.slots.size(); ++srow)
        for (size_t scol = 0; scol < b12.slots.size(); ++scol) {
            auto [jr, mr] = b34.slots[srow];
            auto [jc, mc] = b12.slots[scol];
            if (jr != jc) continue;
            m.block(b34.slot_offset[srow], b12.slot_offset[scol], dim_of(jr), dim_of(jr)) =
                blocks.blocks[jr](mr, mc) * cmat::Identity(dim_of(jr), dim_of(jr));
        }
    return Morphism{{simples_[i1], simples_[i2]},
                    {simples_[i3], simples_[i4]},
                    b34.iso * m * b12.iso.adjoint()};
}

Morphism CategoryContext::rot(const Morphism& f) const {
    if (f.src.size() != 2 || f.tgt.size() != 2)
        throw std::invalid_argument("rot: needs a 2-2 morphism");
    ModulePtr u1 = f.src[0], u2 = f.src[1], u3 = f.tgt[0], u4 = f.tgt[1];
    int d1 = u1->dim(), d2 = u2->dim(), d3 = u3->dim(), d4 = u4->dim();
    cmat m(d4 * d2, d3 * d1);
    for (int a = 0; a < d3; ++a)
        for (int b = 0; b < d1; ++b)
            for (int k = 0; k < d4; ++k)
                for (int l = 0; l < d2; ++l)
                    m(k * d2 + l, a * d1 + b) = f.mat(a * d4 + k, b * d2 + l);
    return Morphism{{dual_of(u3), u1}, {u4, dual_of(u2)}, std::move(m)};
}

Morphism CategoryContext::rot_categorical(const Morphism& f) const {
    ModulePtr u1 = f.src[0], u2 = f.src[1], u3 = f.tgt[0], u4 = f.tgt[1];
    ModulePtr u2s = dual_of(u2), u3s = dual_of(u3);
    Morphism id1 = Morphism::identity({u1});
    Morphism id3s = Morphism::identity({u3s});
    Morphism layer1 = hcompose(hcompose(id3s, id1), cup(u2, u2s));
    Morphism layer2 = hcompose(hcompose(id3s, f), Morphism::identity({u2s}));
    Morphism layer3 = hcompose(hcompose(cap(u3, u3s), Morphism::identity({u4})),
                               Morphism::identity({u2s}));
    return compose(layer3, compose(layer2, layer1));
}

Morphism CategoryContext::rot_relabeled(const Morphism& f, int i1, int i2, int i3, int i4) const {
    Morphism r = rot(f);
    int d1 = dim_of(i1), d4 = dim_of(i4);
    cmat pre = kron(dual_ident_[i3], cmat::Identity(d1, d1));
    cmat post = kron(cmat::Identity(d4, d4), dual_ident_[i2].adjoint());
    return Morphism{{simples_[star_[i3]], simples_[i1]},
                    {simples_[i4], simples_[star_[i2]]},
                    post * r.mat * pre};
}

BlockMatrix CategoryContext::rot_block(const BlockMatrix& b, int i1, int i2, int i3, int i4) const {
    Morphism f = phi_inverse(b, i1, i2, i3, i4);
    Morphism r = rot_relabeled(f, i1, i2, i3, i4);
    return phi(r, star_[i3], i1, i4, star_[i2]);
}

EVector CategoryContext::vector_trace(const Morphism& f) const {
    if (f.src.size() != f.tgt.size())
        throw std::invalid_argument("vector_trace: not an endomorphism");
    for (size_t i = 0; i < f.src.size(); ++i)
        if (f.src[i] != f.tgt[i])
            throw std::invalid_argument("vector_trace: source and target differ");
    ModulePtr w = product_module(gd_.group, f.src);
    EVector chi_w = character(*w, gd_.pairs);
    EVector out(gd_.pairs);
    for (int j = 0; j < simple_count(); ++j) {
        int n = static_cast<int>(round_to_int(inner_product(chi_w, chis_[j])));
        if (n == 0) continue;
        auto kappas = solve_hom(simples_[j], w, n, "hom|" + w->name() + "|" + std::to_string(j));
        cplx tr = 0;
        for (const auto& k : kappas) tr += (k.adjoint() * f.mat * k).trace();
        tr /= static_cast<double>(dim_of(j));
        out += tr * chis_[j];
    }
    return out;
}

cplx CategoryContext::norm_bar(const EVector& w) const {
    cplx s = 0;
    for (int j = 0; j < simple_count(); ++j)
        s += static_cast<double>(dim_of(j)) * inner_product(w, chis_[j]);
    return s;
}

int CategoryContext::catalogue_index(const ModulePtr& m) const {
    if (auto it = catalogue_lookup_.find(m.get()); it != catalogue_lookup_.end()) return it->second;
    if (auto it = dual_cache_.find(m.get()); it != dual_cache_.end()) {
        auto cat = catalogue_lookup_.find(it->second.get());
        if (cat != catalogue_lookup_.end()) return star_[cat->second];
    }
    throw std::invalid_argument("module is not a catalogue simple or the dual of one");
}

Morphism CategoryContext::to_catalogue(const Morphism& f) const {
    Morphism out = f;
    auto primal_of = [this](const ModulePtr& m) -> int {
        auto it = dual_cache_.find(m.get());
        if (it == dual_cache_.end()) throw std::invalid_argument("to_catalogue: unknown factor");
        auto cat = catalogue_lookup_.find(it->second.get());
        if (cat == catalogue_lookup_.end())
            throw std::invalid_argument("to_catalogue: dual of a non-simple factor");
        return cat->second;
    };
    for (size_t pos = 0; pos < out.src.size(); ++pos) {
        if (catalogue_lookup_.count(out.src[pos].get())) continue;
        int i = primal_of(out.src[pos]);
        cmat m = cmat::Identity(1, 1);
        for (size_t k = 0; k < out.src.size(); ++k) {
            cmat factor = k == pos ? dual_ident_[i]
                                   : cmat(cmat::Identity(out.src[k]->dim(), out.src[k]->dim()));
            m = kron(m, factor);
        }
        out.mat = out.mat * m;
        out.src[pos] = simples_[star_[i]];
    }
    for (size_t pos = 0; pos < out.tgt.size(); ++pos) {
        if (catalogue_lookup_.count(out.tgt[pos].get())) continue;
        int i = primal_of(out.tgt[pos]);
        cmat m = cmat::Identity(1, 1);
        for (size_t k = 0; k < out.tgt.size(); ++k) {
            cmat factor = k == pos ? cmat(dual_ident_[i].adjoint())
                                   : cmat(cmat::Identity(out.tgt[k]->dim(), out.tgt[k]->dim()));
            m = kron(m, factor);
        }
        out.mat = m * out.mat;
        out.tgt[pos] = simples_[star_[i]];
    }
    return out;
}

} // namespace dwlink
