#include "dwlink/tangle.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <functional>

namespace dwlink {

TanglePtr tangle_leaf(TangleKind k) {
    auto n = std::make_shared<TangleNode>();
    n->kind = k;
    return n;
}

TanglePtr tangle_twist(long long t) {
    auto n = std::make_shared<TangleNode>();
    n->kind = TangleKind::Twist;
    n->twist = t;
    return n;
}

TanglePtr tangle_rot(TanglePtr e) {
    auto n = std::make_shared<TangleNode>();
    n->kind = TangleKind::Rot;
    n->a = std::move(e);
    return n;
}

TanglePtr tangle_close(TanglePtr e) {
    auto n = std::make_shared<TangleNode>();
    n->kind = TangleKind::Close;
    n->a = std::move(e);
    return n;
}

TanglePtr tangle_v(TanglePtr top, TanglePtr bottom) {
    auto n = std::make_shared<TangleNode>();
    n->kind = TangleKind::VComp;
    n->a = std::move(top);
    n->b = std::move(bottom);
    return n;
}

TanglePtr tangle_h(TanglePtr left, TanglePtr right) {
    auto n = std::make_shared<TangleNode>();
    n->kind = TangleKind::HComp;
    n->a = std::move(left);
    n->b = std::move(right);
    return n;
}

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    TanglePtr parse() {
        TanglePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("unexpected trailing input", pos_);
        return e;
    }

  private:
    const std::string& text_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) throw parse_error(std::string("expected '") + c + "'", static_cast<int>(pos_));
    }

    bool eat_word(const char* w) {
        skip_ws();
        size_t len = std::strlen(w);
        if (text_.compare(pos_, len, w) != 0) return false;
        size_t after = pos_ + len;
        if (after < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_'))
            return false;
        pos_ = after;
        return true;
    }

    long long integer() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(text_[start]))))
            throw parse_error("expected an integer", static_cast<int>(start));
        return std::stoll(text_.substr(start, pos_ - start));
    }

    TanglePtr expr() {
        TanglePtr left = hexpr();
        while (eat('*')) left = tangle_v(left, hexpr());
        return left;
    }

    TanglePtr hexpr() {
        TanglePtr left = atom();
        while (eat('|')) left = tangle_h(left, atom());
        return left;
    }

    TanglePtr atom() {
        skip_ws();
        int at = static_cast<int>(pos_);
        auto tagged = [at](TanglePtr n) {
            const_cast<TangleNode*>(n.get())->text_pos = at;
            return n;
        };
        if (eat('(')) {
            TanglePtr e = expr();
            expect(')');
            return e;
        }
        if (eat_word("id")) return tagged(tangle_leaf(TangleKind::Id));
        if (eat_word("xi")) return tagged(tangle_leaf(TangleKind::CrossNeg));
        if (eat_word("x")) return tagged(tangle_leaf(TangleKind::CrossPos));
        if (eat_word("cup")) return tagged(tangle_leaf(TangleKind::Cup));
        if (eat_word("cap")) return tagged(tangle_leaf(TangleKind::Cap));
        if (eat_word("twist")) {
            expect('(');
            long long n = integer();
            expect(')');
            return tagged(tangle_twist(n));
        }
        if (eat_word("r")) {
            expect('(');
            TanglePtr e = expr();
            expect(')');
            return tagged(tangle_rot(e));
        }
        if (eat_word("close")) {
            expect('(');
            TanglePtr e = expr();
            expect(')');
            return tagged(tangle_close(e));
        }
        throw parse_error("expected a tangle atom", at);
    }
};

struct Arity {
    int src = 0, tgt = 0;
};

TanglePtr hstack(const std::vector<TanglePtr>& parts) {
    if (parts.empty()) throw std::logic_error("hstack of nothing");
    TanglePtr acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = tangle_h(acc, parts[i]);
    return acc;
}

TanglePtr id_stack(int k) {
    std::vector<TanglePtr> ids;
    for (int i = 0; i < k; ++i) ids.push_back(tangle_leaf(TangleKind::Id));
    return hstack(ids);
}

// Closure of an already-desugared k-k tangle: nested cups below, the tangle
// beside k reversed strands, nested caps above.
TanglePtr build_closure(TanglePtr ed, int k) {
    if (k == 0) return ed;
    TanglePtr nest = tangle_leaf(TangleKind::Cup);
    for (int j = 1; j < k; ++j) {
        std::vector<TanglePtr> layer;
        layer.push_back(id_stack(j));
        layer.push_back(tangle_leaf(TangleKind::Cup));
        layer.push_back(id_stack(j));
        nest = tangle_v(hstack(layer), nest);
    }
    TanglePtr mid = tangle_h(ed, id_stack(k));
    TanglePtr acc = tangle_v(mid, nest);
    for (int j = k - 1; j >= 1; --j) {
        std::vector<TanglePtr> layer;
        layer.push_back(id_stack(j));
        layer.push_back(tangle_leaf(TangleKind::Cap));
        layer.push_back(id_stack(j));
        acc = tangle_v(hstack(layer), acc);
    }
    return tangle_v(tangle_leaf(TangleKind::Cap), acc);
}

std::pair<TanglePtr, Arity> desugar_impl(const TanglePtr& node) {
    int pos = node->text_pos;
    auto fail = [pos](const std::string& msg) { throw parse_error(msg, pos); };
    switch (node->kind) {
        case TangleKind::Id:
            return {tangle_leaf(TangleKind::Id), {1, 1}};
        case TangleKind::CrossPos:
            return {tangle_leaf(TangleKind::CrossPos), {2, 2}};
        case TangleKind::CrossNeg:
            return {tangle_leaf(TangleKind::CrossNeg), {2, 2}};
        case TangleKind::Cup:
            return {tangle_leaf(TangleKind::Cup), {0, 2}};
        case TangleKind::Cap:
            return {tangle_leaf(TangleKind::Cap), {2, 0}};
        case TangleKind::Twist: {
            long long n = node->twist;
            if (n == 0) return {tangle_h(tangle_leaf(TangleKind::Id), tangle_leaf(TangleKind::Id)), {2, 2}};
            TangleKind k = n > 0 ? TangleKind::CrossPos : TangleKind::CrossNeg;
            TanglePtr acc = tangle_leaf(k);
            for (long long i = 1; i < std::llabs(n); ++i) acc = tangle_v(tangle_leaf(k), acc);
            return {acc, {2, 2}};
        }
        case TangleKind::Rot: {
            auto [ed, ar] = desugar_impl(node->a);
            if (ar.src != 2 || ar.tgt != 2) fail("r(...) needs a 2-2 tangle");
            TanglePtr l1 = hstack({tangle_leaf(TangleKind::Id), tangle_leaf(TangleKind::Id),
                                   tangle_leaf(TangleKind::Cup)});
            TanglePtr l2 = hstack({tangle_leaf(TangleKind::Id), ed, tangle_leaf(TangleKind::Id)});
            TanglePtr l3 = hstack({tangle_leaf(TangleKind::Cap), tangle_leaf(TangleKind::Id),
                                   tangle_leaf(TangleKind::Id)});
            return {tangle_v(l3, tangle_v(l2, l1)), {2, 2}};
        }
        case TangleKind::Close: {
            auto [ed, ar] = desugar_impl(node->a);
            if (ar.src != ar.tgt) fail("close(...) needs matching source and target arity");
            return {build_closure(ed, ar.src), {0, 0}};
        }
        case TangleKind::VComp: {
            auto [top, at] = desugar_impl(node->a);
            auto [bot, ab] = desugar_impl(node->b);
            if (ab.tgt != at.src) fail("vertical composite arity mismatch");
            return {tangle_v(top, bot), {ab.src, at.tgt}};
        }
        case TangleKind::HComp: {
            auto [l, al] = desugar_impl(node->a);
            auto [r, ar] = desugar_impl(node->b);
            return {tangle_h(l, r), {al.src + ar.src, al.tgt + ar.tgt}};
        }
    }
    throw std::logic_error("unreachable tangle kind");
}

} // namespace

TanglePtr parse_tangle(const std::string& text) {
    return Parser(text).parse();
}

TanglePtr desugar(const TanglePtr& node) {
    return desugar_impl(node).first;
}

TanglePtr closure_around(TanglePtr desugared_kk, int arity) {
    return build_closure(std::move(desugared_kk), arity);
}

namespace {

// union-find with direction parity relative to the root
struct ParityUF {
    std::vector<int> parent;
    std::vector<int> parity;

    int add() {
        parent.push_back(static_cast<int>(parent.size()));
        parity.push_back(0);
        return static_cast<int>(parent.size()) - 1;
    }

    std::pair<int, int> find(int x) {
        if (parent[x] == x) return {x, 0};
        auto [root, p] = find(parent[x]);
        parent[x] = root;
        parity[x] ^= p;
        return {root, parity[x]};
    }

    void unite(int a, int b, int rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if ((pa ^ pb) != rel) throw std::logic_error("inconsistent strand orientation");
            return;
        }
        parent[ra] = rb;
        parity[ra] = pa ^ pb ^ rel;
    }
};

} // namespace

TangleAnalysis::TangleAnalysis(TanglePtr desugared_root) : root_(std::move(desugared_root)) {
    ParityUF uf;
    auto new_port = [&](const TangleNode* leaf) {
        int p = uf.add();
        internal_.push_back(-1);
        external_.push_back(-1);
        port_leaf_.push_back(leaf);
        return p;
    };
    auto link_internal = [&](int a, int b, int rel) {
        internal_[a] = b;
        internal_[b] = a;
        uf.unite(a, b, rel);
    };

    // recursive port assignment
    std::function<LeafPorts(const TanglePtr&)> walk = [&](const TanglePtr& n) -> LeafPorts {
        LeafPorts lp;
        switch (n->kind) {
            case TangleKind::Id: {
                int s = new_port(n.get()), t = new_port(n.get());
                link_internal(s, t, 0);
                lp.src = {s};
                lp.tgt = {t};
                break;
            }
            case TangleKind::CrossPos:
            case TangleKind::CrossNeg: {
                int s1 = new_port(n.get()), s2 = new_port(n.get());
                int t1 = new_port(n.get()), t2 = new_port(n.get());
                link_internal(s1, t2, 0);
                link_internal(s2, t1, 0);
                lp.src = {s1, s2};
                lp.tgt = {t1, t2};
                break;
            }
            case TangleKind::Cup: {
                int t1 = new_port(n.get()), t2 = new_port(n.get());
                link_internal(t1, t2, 1);
                lp.tgt = {t1, t2};
                break;
            }
            case TangleKind::Cap: {
                int s1 = new_port(n.get()), s2 = new_port(n.get());
                link_internal(s1, s2, 1);
                lp.src = {s1, s2};
                break;
            }
            case TangleKind::VComp: {
                LeafPorts bot = walk(n->b);
                LeafPorts top = walk(n->a);
                if (bot.tgt.size() != top.src.size())
                    throw parse_error("vertical composite arity mismatch", n->text_pos);
                for (size_t i = 0; i < bot.tgt.size(); ++i) {
                    external_[bot.tgt[i]] = top.src[i];
                    external_[top.src[i]] = bot.tgt[i];
                    uf.unite(bot.tgt[i], top.src[i], 0);
                }
                lp.src = bot.src;
                lp.tgt = top.tgt;
                break;
            }
            case TangleKind::HComp: {
                LeafPorts l = walk(n->a);
                LeafPorts r = walk(n->b);
                lp = l;
                lp.src.insert(lp.src.end(), r.src.begin(), r.src.end());
                lp.tgt.insert(lp.tgt.end(), r.tgt.begin(), r.tgt.end());
                break;
            }
            default:
                throw std::logic_error("analysis requires a desugared tangle");
        }
        ports_[n.get()] = lp;
        return lp;
    };

    LeafPorts top = walk(root_);
    src_ = top.src;
    tgt_ = top.tgt;

    int nports = static_cast<int>(internal_.size());
    comp_.assign(nports, -1);
    dir_.assign(nports, 0);
    std::map<int, int> root_to_comp;
    std::map<int, int> root_min;
    for (int p = 0; p < nports; ++p) {
        int r = uf.find(p).first;
        if (!root_min.count(r)) root_min[r] = p;
    }
    // components ordered by their minimal port
    std::vector<std::pair<int, int>> order; // (min port, root)
    for (auto& [r, m] : root_min) order.emplace_back(m, r);
    std::sort(order.begin(), order.end());
    for (size_t c = 0; c < order.size(); ++c) {
        root_to_comp[order[c].second] = static_cast<int>(c);
        component_min_port_.push_back(order[c].first);
    }
    for (int p = 0; p < nports; ++p) {
        auto [r, parity] = uf.find(p);
        comp_[p] = root_to_comp[r];
        int base = uf.find(component_min_port_[comp_[p]]).second;
        dir_[p] = (parity == base) ? +1 : -1;
    }

    // crossings and writhe
    writhe_.assign(component_min_port_.size(), 0);
    std::function<void(const TanglePtr&)> collect = [&](const TanglePtr& n) {
        if (n->kind == TangleKind::CrossPos || n->kind == TangleKind::CrossNeg) {
            const LeafPorts& lp = ports_.at(n.get());
            CrossingInfo ci;
            ci.node = n.get();
            ci.s1 = lp.src[0];
            ci.s2 = lp.src[1];
            ci.t1 = lp.tgt[0];
            ci.t2 = lp.tgt[1];
            int type = n->kind == TangleKind::CrossPos ? +1 : -1;
            ci.sign = type * dir_[ci.s1] * dir_[ci.s2];
            ci.self = comp_[ci.s1] == comp_[ci.s2];
            // for the positive generator the (s1,t2) strand passes over
            ci.comp_over = type > 0 ? comp_[ci.s1] : comp_[ci.s2];
            ci.comp_under = type > 0 ? comp_[ci.s2] : comp_[ci.s1];
            if (ci.self) writhe_[comp_[ci.s1]] += ci.sign;
            crossings_.push_back(ci);
        }
        if (n->a) collect(n->a);
        if (n->b) collect(n->b);
    };
    collect(root_);
}

int TangleAnalysis::component_of(int port) const { return comp_[port]; }
int TangleAnalysis::direction(int port) const { return dir_[port]; }

long long TangleAnalysis::total_writhe() const {
    long long w = 0;
    for (long long x : writhe_) w += x;
    return w;
}

std::vector<int> TangleAnalysis::oriented_cycle(int component) const {
    int start = component_min_port_[component];
    std::vector<int> cycle;
    int p = start;
    do {
        int q = internal_[p];
        cycle.push_back(p);
        cycle.push_back(q);
        p = external_[q];
        if (p < 0) throw std::invalid_argument("oriented_cycle requires a closed component");
    } while (p != start);

    // does the first internal move follow the canonical orientation?
    auto entering_ok = [&](int port) {
        const TangleNode* leaf = port_leaf_[port];
        const LeafPorts& lp = ports_.at(leaf);
        bool is_src = std::find(lp.src.begin(), lp.src.end(), port) != lp.src.end();
        switch (leaf->kind) {
            case TangleKind::Id:
            case TangleKind::CrossPos:
            case TangleKind::CrossNeg:
                return is_src ? dir_[port] == +1 : dir_[port] == -1;
            case TangleKind::Cup:
                return dir_[port] == -1;
            case TangleKind::Cap:
                return dir_[port] == +1;
            default:
                throw std::logic_error("port on a non-leaf");
        }
    };
    if (!entering_ok(cycle[0])) {
        // reversing the port list flips the traversal; pairs still alternate
        // internal-first because the old segments reverse in place
        std::reverse(cycle.begin(), cycle.end());
        // re-anchor at the segment containing the start port
        for (size_t k = 0; k < cycle.size(); k += 2)
            if (cycle[k] == start || cycle[k + 1] == start) {
                std::rotate(cycle.begin(), cycle.begin() + k, cycle.end());
                break;
            }
    }
    if (internal_[cycle[0]] != cycle[1]) throw std::logic_error("cycle orientation bookkeeping");
    return cycle;
}

namespace {

ModulePtr effective_module(const TangleAnalysis& an, int port, const std::vector<int>& colors,
                           const CategoryContext& ctx) {
    ModulePtr base = ctx.simple(colors.at(an.component_of(port)));
    return an.direction(port) == +1 ? base : ctx.dual_of(base);
}

} // namespace

Morphism evaluate_subtree(const TangleAnalysis& an, const TangleNode* node,
                          const std::vector<int>& colors, const CategoryContext& ctx) {
    const LeafPorts& lp = an.ports_of(node);
    switch (node->kind) {
        case TangleKind::Id:
            return Morphism::identity({effective_module(an, lp.src[0], colors, ctx)});
        case TangleKind::CrossPos:
            return braiding(effective_module(an, lp.src[0], colors, ctx),
                            effective_module(an, lp.src[1], colors, ctx));
        case TangleKind::CrossNeg:
            return braiding_inverse(effective_module(an, lp.src[0], colors, ctx),
                                    effective_module(an, lp.src[1], colors, ctx));
        case TangleKind::Cup: {
            ModulePtr a = effective_module(an, lp.tgt[0], colors, ctx);
            ModulePtr as = ctx.dual_of(a);
            if (effective_module(an, lp.tgt[1], colors, ctx) != as)
                throw std::logic_error("cup legs are not dual to each other");
            return cup(a, as);
        }
        case TangleKind::Cap: {
            ModulePtr b = effective_module(an, lp.src[1], colors, ctx);
            ModulePtr bs = ctx.dual_of(b);
            if (effective_module(an, lp.src[0], colors, ctx) != bs)
                throw std::logic_error("cap legs are not dual to each other");
            return cap(b, bs);
        }
        case TangleKind::VComp:
            return compose(evaluate_subtree(an, node->a.get(), colors, ctx),
                           evaluate_subtree(an, node->b.get(), colors, ctx));
        case TangleKind::HComp:
            return hcompose(evaluate_subtree(an, node->a.get(), colors, ctx),
                            evaluate_subtree(an, node->b.get(), colors, ctx));
        default:
            throw std::logic_error("evaluate on a non-desugared node");
    }
}

int effective_color(const TangleAnalysis& an, int port, const std::vector<int>& colors,
                    const CategoryContext& ctx) {
    int base = colors.at(an.component_of(port));
    return an.direction(port) == +1 ? base : ctx.star(base);
}

Morphism evaluate(const TangleAnalysis& an, const std::vector<int>& colors,
                  const CategoryContext& ctx) {
    if (static_cast<int>(colors.size()) != an.component_count())
        throw std::invalid_argument("coloring must assign one simple per component");
    return evaluate_subtree(an, an.root().get(), colors, ctx);
}

ClosureEval closure_eval(const TanglePtr& open_expr, const std::vector<int>& colors,
                         const CategoryContext& ctx) {
    auto ed = desugar(open_expr);
    TangleAnalysis probe(ed);
    if (probe.boundary_src().size() != probe.boundary_tgt().size())
        throw std::invalid_argument("closure_eval: tangle is not closable");
    int k = static_cast<int>(probe.boundary_src().size());
    // one shared analysis for both routes keeps the orientations identical:
    // the closure is built around the already-desugared open part, which then
    // also serves as the subtree to trace
    TangleAnalysis can(build_closure(ed, k));
    if (!can.closed()) throw std::invalid_argument("closure_eval: closure is not closed");

    Morphism f = evaluate_subtree(can, ed.get(), colors, ctx);
    for (size_t i = 0; i < f.src.size(); ++i)
        if (i >= f.tgt.size() || f.src[i] != f.tgt[i])
            throw std::invalid_argument("closure_eval: boundary colors do not match");
    EVector tr = ctx.vector_trace(f);
    cplx via_trace = ctx.norm_bar(tr);
    Morphism whole = evaluate(can, colors, ctx);
    return ClosureEval{via_trace, whole.mat(0, 0)};
}

MultiEVector LinkInvariant::writhe_corrected() const {
    // the raw table transforms by Q^{+w} under a framing change by w, so
    // shifting by -writhe lands on the framing-independent table
    std::vector<long long> neg;
    for (long long w : writhes) neg.push_back(-w);
    return raw.q_twist(neg);
}

LinkInvariant dw_link_invariant(const TanglePtr& closed_expr, const CategoryContext& ctx) {
    TangleAnalysis an(desugar(closed_expr));
    if (!an.closed()) throw std::invalid_argument("dw_link_invariant needs a closed diagram");
    int r = an.component_count();
    MultiEVector z(ctx.pairs(), r);
    std::vector<int> colors(r, 0);
    double inv_order = 1.0 / ctx.group().order();
    while (true) {
        Morphism f = evaluate(an, colors, ctx);
        cplx scalar = f.mat(0, 0);
        std::vector<const EVector*> factors;
        for (int s = 0; s < r; ++s) factors.push_back(&ctx.chi(colors[s]));
        z.add_outer(scalar * inv_order, factors);
        int slot = r - 1;
        while (slot >= 0 && ++colors[slot] == ctx.simple_count()) colors[slot--] = 0;
        if (slot < 0) break;
    }
    std::vector<long long> writhes;
    for (int c = 0; c < r; ++c) writhes.push_back(an.writhe(c));
    return LinkInvariant(std::move(z), std::move(writhes));
}

std::vector<cplx> colored_evaluations(const TangleAnalysis& an, const CategoryContext& ctx) {
    if (!an.closed()) throw std::invalid_argument("colored_evaluations needs a closed diagram");
    int r = an.component_count();
    std::vector<cplx> out;
    std::vector<int> colors(r, 0);
    while (true) {
        out.push_back(evaluate(an, colors, ctx).mat(0, 0));
        int slot = r - 1;
        while (slot >= 0 && ++colors[slot] == ctx.simple_count()) colors[slot--] = 0;
        if (slot < 0) break;
    }
    return out;
}

} // namespace dwlink
