#include "dwlink/gmodule.hpp"

#include <algorithm>

namespace dwlink {

GradedModule::GradedModule(GroupPtr group, std::string name, std::vector<int> grade_of,
                           std::vector<cmat> action)
    : group_(std::move(group)), name_(std::move(name)), grade_of_(std::move(grade_of)),
      action_(std::move(action)) {
    if (static_cast<int>(action_.size()) != group_->order())
        throw std::invalid_argument("module action must have one matrix per group element");
    for (const auto& m : action_)
        if (m.rows() != dim() || m.cols() != dim())
            throw std::invalid_argument("module action matrix has wrong shape");
}

int GradedModule::grade_dim(int x) const {
    int d = 0;
    for (int g : grade_of_)
        if (g == x) ++d;
    return d;
}

void GradedModule::validate(double tol) const {
    const FiniteGroup& g = *group_;
    cmat id = cmat::Identity(dim(), dim());
    if (!near(action_[g.identity()], id, tol)) throw numeric_error("module: identity acts nontrivially");
    for (int a = 0; a < g.order(); ++a) {
        if (!near(action_[a] * action_[a].adjoint(), id, tol))
            throw numeric_error("module: action not unitary");
        // grade bookkeeping g(U_x) = U_{gxg^-1}
        for (int r = 0; r < dim(); ++r)
            for (int c = 0; c < dim(); ++c)
                if (std::abs(action_[a](r, c)) > tol &&
                    grade_of_[r] != g.conj(a, grade_of_[c]))
                    throw numeric_error("module: action violates grading");
        for (int b = 0; b < g.order(); ++b)
            if (!near(action_[a] * action_[b], action_[g.mul(a, b)], tol))
                throw numeric_error("module: action not a homomorphism");
    }
}

ModulePtr unit_object(GroupPtr g) {
    std::vector<cmat> act(g->order(), cmat::Identity(1, 1));
    return std::make_shared<GradedModule>(g, "1", std::vector<int>{g->identity()}, std::move(act));
}

ModulePtr tensor(const ModulePtr& u, const ModulePtr& v) {
    if (u->group_ptr() != v->group_ptr()) throw std::invalid_argument("tensor: group mismatch");
    const FiniteGroup& g = u->group();
    int du = u->dim(), dv = v->dim();
    std::vector<int> grade(du * dv);
    for (int a = 0; a < du; ++a)
        for (int b = 0; b < dv; ++b) grade[a * dv + b] = g.mul(u->grade_of(a), v->grade_of(b));
    std::vector<cmat> act(g.order());
    for (int x = 0; x < g.order(); ++x) act[x] = kron(u->act(x), v->act(x));
    return std::make_shared<GradedModule>(u->group_ptr(), "(" + u->name() + "*" + v->name() + ")",
                                          std::move(grade), std::move(act));
}

ModulePtr dual(const ModulePtr& u) {
    const FiniteGroup& g = u->group();
    std::vector<int> grade(u->dim());
    for (int a = 0; a < u->dim(); ++a) grade[a] = g.inv(u->grade_of(a));
    std::vector<cmat> act(g.order());
    for (int x = 0; x < g.order(); ++x) act[x] = u->act(x).conjugate();
    std::string name = u->name();
    if (name.size() > 1 && name.back() == '*')
        name.pop_back();
    else
        name += "*";
    return std::make_shared<GradedModule>(u->group_ptr(), name, std::move(grade), std::move(act));
}

int Morphism::product_dim(const std::vector<ModulePtr>& factors) {
    int d = 1;
    for (const auto& f : factors) d *= f->dim();
    return d;
}

Morphism Morphism::identity(std::vector<ModulePtr> factors) {
    int d = product_dim(factors);
    Morphism m{factors, factors, cmat::Identity(d, d)};
    return m;
}

Morphism Morphism::zero(std::vector<ModulePtr> src, std::vector<ModulePtr> tgt) {
    int r = product_dim(tgt), c = product_dim(src);
    return Morphism{std::move(src), std::move(tgt), cmat::Zero(r, c)};
}

namespace {

bool same_factors(const std::vector<ModulePtr>& a, const std::vector<ModulePtr>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

} // namespace

Morphism compose(const Morphism& a, const Morphism& b) {
    if (!same_factors(a.src, b.tgt))
        throw std::invalid_argument("compose: boundary mismatch between " +
                                    (a.src.empty() ? std::string("1") : a.src[0]->name()) +
                                    " chain and target of previous layer");
    return Morphism{b.src, a.tgt, a.mat * b.mat};
}

Morphism hcompose(const Morphism& a, const Morphism& b) {
    std::vector<ModulePtr> src = a.src, tgt = a.tgt;
    src.insert(src.end(), b.src.begin(), b.src.end());
    tgt.insert(tgt.end(), b.tgt.begin(), b.tgt.end());
    return Morphism{std::move(src), std::move(tgt), kron(a.mat, b.mat)};
}

int product_grade(const std::vector<ModulePtr>& factors, long long index) {
    if (factors.empty()) return 0;
    const FiniteGroup& g = factors[0]->group();
    int grade = g.identity();
    // peel indices right to left, multiply grades left to right
    std::vector<int> per(factors.size());
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
        per[i] = static_cast<int>(index % factors[i]->dim());
        index /= factors[i]->dim();
    }
    for (size_t i = 0; i < factors.size(); ++i) grade = g.mul(grade, factors[i]->grade_of(per[i]));
    return grade;
}

double grade_defect(const Morphism& f) {
    if (f.src.empty() && f.tgt.empty()) return 0.0;
    const FiniteGroup* g = nullptr;
    if (!f.src.empty()) g = &f.src[0]->group();
    else g = &f.tgt[0]->group();
    double worst = 0;
    for (int r = 0; r < f.mat.rows(); ++r)
        for (int c = 0; c < f.mat.cols(); ++c) {
            int gr = f.tgt.empty() ? g->identity() : product_grade(f.tgt, r);
            int gc = f.src.empty() ? g->identity() : product_grade(f.src, c);
            if (gr != gc) worst = std::max(worst, std::abs(f.mat(r, c)));
        }
    return worst;
}

namespace {

cmat list_action(const std::vector<ModulePtr>& factors, int g) {
    cmat m = cmat::Identity(1, 1);
    for (const auto& f : factors) m = kron(m, f->act(g));
    return m;
}

} // namespace

double equivariance_defect(const Morphism& f) {
    const FiniteGroup* g = nullptr;
    if (!f.src.empty()) g = &f.src[0]->group();
    else if (!f.tgt.empty()) g = &f.tgt[0]->group();
    else return 0.0;
    double worst = 0;
    for (int a = 0; a < g->order(); ++a) {
        cmat lhs = list_action(f.tgt, a) * f.mat;
        cmat rhs = f.mat * list_action(f.src, a);
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
}

Morphism braiding(const ModulePtr& u, const ModulePtr& v) {
    if (u->group_ptr() != v->group_ptr()) throw std::invalid_argument("braiding: group mismatch");
    int du = u->dim(), dv = v->dim();
    cmat m = cmat::Zero(dv * du, du * dv);
    for (int a = 0; a < du; ++a) {
        const cmat& vx = v->act(u->grade_of(a)); // action of grade(a) on V
        for (int b = 0; b < dv; ++b)
            for (int bp = 0; bp < dv; ++bp)
                if (vx(bp, b) != cplx(0, 0)) m(bp * du + a, a * dv + b) = vx(bp, b);
    }
    return Morphism{{u, v}, {v, u}, std::move(m)};
}

Morphism braiding_inverse(const ModulePtr& u, const ModulePtr& v) {
    // inverse of R_{V,U}: u_x (x) v_y -> v_y (x) (y^{-1}.u_x)
    if (u->group_ptr() != v->group_ptr()) throw std::invalid_argument("braiding: group mismatch");
    const FiniteGroup& g = u->group();
    int du = u->dim(), dv = v->dim();
    cmat m = cmat::Zero(dv * du, du * dv);
    for (int b = 0; b < dv; ++b) {
        const cmat& uy = u->act(g.inv(v->grade_of(b)));
        for (int a = 0; a < du; ++a)
            for (int ap = 0; ap < du; ++ap)
                if (uy(ap, a) != cplx(0, 0)) m(b * du + ap, a * dv + b) = uy(ap, a);
    }
    return Morphism{{u, v}, {v, u}, std::move(m)};
}

Morphism cup(const ModulePtr& u, const ModulePtr& ustar) {
    int d = u->dim();
    cmat m = cmat::Zero(d * d, 1);
    for (int a = 0; a < d; ++a) m(a * d + a, 0) = 1.0;
    return Morphism{{}, {u, ustar}, std::move(m)};
}

Morphism cap(const ModulePtr& u, const ModulePtr& ustar) {
    int d = u->dim();
    cmat m = cmat::Zero(1, d * d);
    for (int a = 0; a < d; ++a) m(0, a * d + a) = 1.0;
    return Morphism{{ustar, u}, {}, std::move(m)};
}

EVector character(const GradedModule& u, PairSpacePtr pairs) {
    EVector chi(pairs);
    for (int i = 0; i < pairs->count(); ++i) {
        auto [x, h] = pairs->pair(i);
        cplx tr = 0;
        for (int a = 0; a < u.dim(); ++a)
            if (u.grade_of(a) == x) tr += u.act(h)(a, a);
        chi.values()(i) = tr;
    }
    return chi;
}

int dim_total(const GradedModule& u) {
    return u.dim();
}

ModulePtr product_module(GroupPtr g, const std::vector<ModulePtr>& factors) {
    ModulePtr acc = unit_object(g);
    if (factors.empty()) return acc;
    acc = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) acc = tensor(acc, factors[i]);
    return acc;
}

} // namespace dwlink
