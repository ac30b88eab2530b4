#pragma once

#include "dwlink/category.hpp"

namespace dwlink::testing {

// Group-average a random grade-preserving map between factor lists; the
// result is an equivariant morphism, useful as generic test input.
inline Morphism random_equivariant(const CategoryContext& ctx, std::vector<ModulePtr> src,
                                   std::vector<ModulePtr> tgt, std::uint64_t seed) {
    ModulePtr a = product_module(ctx.group_ptr(), src);
    ModulePtr b = product_module(ctx.group_ptr(), tgt);
    const FiniteGroup& g = ctx.group();
    DetRng rng(seed);
    cmat r = cmat::Zero(b->dim(), a->dim());
    for (int row = 0; row < b->dim(); ++row)
        for (int col = 0; col < a->dim(); ++col)
            if (b->grade_of(row) == a->grade_of(col)) r(row, col) = rng.next_cplx_normal();
    cmat f = cmat::Zero(b->dim(), a->dim());
    for (int x = 0; x < g.order(); ++x) f += b->act(x) * r * a->act(x).adjoint();
    f /= static_cast<double>(g.order());
    return Morphism{std::move(src), std::move(tgt), std::move(f)};
}

// Ordinal of the simple with the given class size and twist value (used to
// locate the two reflection-graded simples of a dihedral group).
inline int find_simple_by_class_and_twist(const CategoryContext& ctx, size_t class_size,
                                          cplx twist) {
    for (int i = 0; i < ctx.simple_count(); ++i) {
        const auto& cls = ctx.data().classes[ctx.simple_index(i).class_idx];
        if (cls.members.size() == class_size && std::abs(ctx.twist(i) - twist) < 1e-9) return i;
    }
    throw std::runtime_error("no simple with requested class size and twist");
}

inline int find_W(const CategoryContext& ctx, int sign) {
    int n = ctx.group().order() / 2;
    return find_simple_by_class_and_twist(ctx, static_cast<size_t>(n), cplx(sign, 0));
}

} // namespace dwlink::testing
