#include "dwlink/espace.hpp"

#include <algorithm>
#include <array>

namespace dwlink {

PairSpace::PairSpace(GroupPtr g) : group_(std::move(g)) {
    int n = group_->order();
    lookup_.assign(n * n, -1);
    for (int x = 0; x < n; ++x)
        for (int h = 0; h < n; ++h)
            if (group_->commute(x, h)) {
                lookup_[x * n + h] = static_cast<int>(pairs_.size());
                pairs_.emplace_back(x, h);
            }
}

int PairSpace::index(int x, int g) const {
    return lookup_[x * group_->order() + g];
}

EVector::EVector(PairSpacePtr space, cvec values) : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_->count()) throw std::invalid_argument("EVector size mismatch");
}

cplx EVector::at(int x, int g) const {
    int i = space_->index(x, g);
    if (i < 0) throw std::invalid_argument("EVector::at on non-commuting pair");
    return values_(i);
}

void EVector::set(int x, int g, cplx v) {
    int i = space_->index(x, g);
    if (i < 0) throw std::invalid_argument("EVector::set on non-commuting pair");
    values_(i) = v;
}

double EVector::invariance_defect() const {
    const FiniteGroup& g = space_->group();
    double worst = 0;
    for (int i = 0; i < space_->count(); ++i) {
        auto [x, h] = space_->pair(i);
        for (int a = 0; a < g.order(); ++a) {
            cplx v = values_(space_->index(g.conj(a, x), g.conj(a, h)));
            worst = std::max(worst, std::abs(v - values_(i)));
        }
    }
    return worst;
}

EVector& EVector::operator+=(const EVector& o) {
    if (space_ != o.space_ && space_->group_ptr() != o.space().group_ptr())
        throw std::invalid_argument("EVector group mismatch");
    values_ += o.values_;
    return *this;
}

EVector& EVector::operator*=(cplx s) {
    values_ *= s;
    return *this;
}

cplx inner_product(const EVector& f1, const EVector& f2) {
    if (f1.space().group_ptr() != f2.space().group_ptr())
        throw std::invalid_argument("inner_product: group mismatch");
    cplx s = f1.values().dot(f2.values()); // Eigen dot conjugates the first arg
    return std::conj(s) / static_cast<double>(f1.space().group().order());
}

EVector sl2z_action(const std::array<long long, 4>& m, const EVector& f) {
    if (m[0] * m[3] - m[1] * m[2] != 1) throw std::invalid_argument("sl2z_action: det != 1");
    const FiniteGroup& g = f.space().group();
    EVector out(f.space_ptr());
    for (int i = 0; i < f.space().count(); ++i) {
        auto [x, h] = f.space().pair(i);
        int u = g.mul(g.power(x, m[0]), g.power(h, m[1]));
        int v = g.mul(g.power(x, m[2]), g.power(h, m[3]));
        int j = f.space().index(u, v);
        if (j < 0) throw std::logic_error("sl2z image pair does not commute");
        out.values()(i) = f.values()(j);
    }
    return out;
}

EVector q_twist_power(const EVector& f, long long k) {
    const FiniteGroup& g = f.space().group();
    EVector out(f.space_ptr());
    for (int i = 0; i < f.space().count(); ++i) {
        auto [x, h] = f.space().pair(i);
        int j = f.space().index(x, g.mul(g.power(x, k), h));
        out.values()(i) = f.values()(j);
    }
    return out;
}

GroupData GroupData::build(GroupPtr g, std::uint64_t seed) {
    GroupData gd;
    gd.group = g;
    gd.pairs = std::make_shared<PairSpace>(g);
    gd.classes = conjugacy_classes(*g);
    gd.class_irreps.resize(gd.classes.size());
    for (size_t c = 0; c < gd.classes.size(); ++c)
        gd.class_irreps[c] = irreps(*gd.classes[c].centralizer, seed);
    int ord = 0;
    for (size_t c = 0; c < gd.classes.size(); ++c)
        for (size_t r = 0; r < gd.class_irreps[c].size(); ++r)
            gd.simples.push_back(SimpleIndex{static_cast<int>(c), static_cast<int>(r), ord++});
    return gd;
}

EVector canonical_basis_vector(const GroupData& gd, const SimpleIndex& idx) {
    const FiniteGroup& g = *gd.group;
    const ConjugacyClass& cls = gd.classes[idx.class_idx];
    const UnitaryIrrep& rho = gd.class_irreps[idx.class_idx][idx.irrep_idx];
    std::vector<int> parent_to_cent(g.order(), -1);
    for (size_t i = 0; i < cls.embed.size(); ++i) parent_to_cent[cls.embed[i]] = static_cast<int>(i);

    EVector chi(gd.pairs);
    for (size_t mi = 0; mi < cls.members.size(); ++mi) {
        int y = cls.members[mi];
        int k = cls.witness[mi]; // k rep k^-1 = y
        for (int h = 0; h < g.order(); ++h) {
            if (!g.commute(y, h)) continue;
            int h0 = g.conj(g.inv(k), h); // lies in the centralizer of rep
            int hc = parent_to_cent[h0];
            if (hc < 0) throw std::logic_error("transported element not in centralizer");
            chi.set(y, h, rho.char_at(hc));
        }
    }
    return chi;
}

std::vector<EVector> canonical_basis(const GroupData& gd) {
    std::vector<EVector> out;
    out.reserve(gd.simples.size());
    for (const auto& s : gd.simples) out.push_back(canonical_basis_vector(gd, s));
    return out;
}

cplx theta(const GroupData& gd, const SimpleIndex& idx) {
    EVector chi = canonical_basis_vector(gd, idx);
    const ConjugacyClass& cls = gd.classes[idx.class_idx];
    cplx value = 0;
    bool first = true;
    for (int y : cls.members) {
        cplx t = chi.at(y, y) / chi.at(y, gd.group->identity());
        if (first) {
            value = t;
            first = false;
        } else if (std::abs(t - value) > kTol) {
            throw numeric_error("theta depends on the class member; irrep wiring broken");
        }
    }
    if (std::abs(std::abs(value) - 1.0) > kTol) throw numeric_error("theta is not unimodular");
    return value;
}

int commuting_pair_orbit_count(const FiniteGroup& g) {
    PairSpace ps(std::make_shared<FiniteGroup>(g));
    std::vector<bool> seen(ps.count(), false);
    int orbits = 0;
    for (int i = 0; i < ps.count(); ++i) {
        if (seen[i]) continue;
        ++orbits;
        auto [x, h] = ps.pair(i);
        for (int a = 0; a < g.order(); ++a) seen[ps.index(g.conj(a, x), g.conj(a, h))] = true;
    }
    return orbits;
}

std::pair<cvec, double> basis_coefficients(const GroupData&, const std::vector<EVector>& basis,
                                           const EVector& f) {
    cvec coeff(basis.size());
    EVector residual = f;
    for (size_t i = 0; i < basis.size(); ++i) {
        coeff(i) = inner_product(f, basis[i]);
        residual += (-coeff(i)) * basis[i];
    }
    return {coeff, residual.values().norm()};
}

MultiEVector::MultiEVector(PairSpacePtr space, int components)
    : space_(std::move(space)), r_(components) {
    long long total = 1;
    for (int i = 0; i < r_; ++i) total *= space_->count();
    values_ = cvec::Zero(total);
}

long long MultiEVector::flat_index(const std::vector<int>& pair_indices) const {
    if (static_cast<int>(pair_indices.size()) != r_)
        throw std::invalid_argument("MultiEVector: tuple arity mismatch");
    long long idx = 0;
    for (int i = 0; i < r_; ++i) idx = idx * space_->count() + pair_indices[i];
    return idx;
}

void MultiEVector::add_outer(cplx scale, const std::vector<const EVector*>& factors) {
    if (static_cast<int>(factors.size()) != r_)
        throw std::invalid_argument("MultiEVector: factor arity mismatch");
    std::vector<int> tuple(r_, 0);
    long long total = values_.size();
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        cplx v = scale;
        for (int i = r_ - 1; i >= 0; --i) {
            tuple[i] = static_cast<int>(rem % space_->count());
            rem /= space_->count();
        }
        for (int i = 0; i < r_; ++i) v *= factors[i]->values()(tuple[i]);
        values_(flat) += v;
    }
}

MultiEVector MultiEVector::q_twist(const std::vector<long long>& powers) const {
    if (static_cast<int>(powers.size()) != r_)
        throw std::invalid_argument("MultiEVector: power arity mismatch");
    const FiniteGroup& g = space_->group();
    MultiEVector out(space_, r_);
    long long total = values_.size();
    std::vector<int> tuple(r_, 0);
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        for (int i = r_ - 1; i >= 0; --i) {
            tuple[i] = static_cast<int>(rem % space_->count());
            rem /= space_->count();
        }
        long long src = 0;
        for (int i = 0; i < r_; ++i) {
            auto [x, h] = space_->pair(tuple[i]);
            int j = space_->index(x, g.mul(g.power(x, powers[i]), h));
            src = src * space_->count() + j;
        }
        out.values_(flat) = values_(src);
    }
    return out;
}

} // namespace dwlink
