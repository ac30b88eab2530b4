#include <doctest.h>

#include "dwlink/cyclotomic.hpp"

using namespace dwlink;

TEST_CASE("field degrees") {
    CHECK(CycField::make(1)->degree() == 1);  // Q(zeta_2) = Q
    CHECK(CycField::make(3)->degree() == 2);
    CHECK(CycField::make(5)->degree() == 4);
    CHECK(CycField::make(7)->degree() == 6);
    CHECK(CycField::make(9)->degree() == 6);
    CHECK(CycField::make(15)->degree() == 8);
    CHECK(CycField::make(21)->degree() == 12);
    CHECK(CycField::make(71)->degree() == 70);
}

TEST_CASE("roots of unity relations") {
    auto f = CycField::make(5);
    Cyc z = f->zeta(1);
    Cyc acc = f->one();
    for (int i = 0; i < 5; ++i) acc = acc * z;
    CHECK(acc == f->one()); // zeta^5 = 1
    // 1 + zeta + ... + zeta^4 = 0
    Cyc s = f->zero();
    for (int i = 0; i < 5; ++i) s += f->zeta(i);
    CHECK(s.is_zero());
    // the chosen square root squares to zeta
    CHECK(f->zeta_half(1) * f->zeta_half(1) == f->zeta(1));
    CHECK(f->zeta_half(2) == f->zeta(1));
    // conjugation inverts roots
    CHECK(f->zeta(2).conj() == f->zeta(-2));
    CHECK((f->zeta(1) + f->zeta(-1)).conj() == f->zeta(1) + f->zeta(-1));
}

TEST_CASE("rational extraction and integrality") {
    auto f = CycField::make(7);
    Cyc s = f->zero();
    for (int i = 0; i < 7; ++i) s += f->zeta(3 * i);
    CHECK(s.is_rational());
    CHECK(s.integer_value() == 0);
    Cyc t = f->integer(4).scaled(mpq_class(3, 2));
    CHECK(t.rational_value() == mpq_class(6));
    CHECK_THROWS(f->zeta(1).rational_value());
    CHECK_THROWS(f->rational(mpq_class(1, 3)).integer_value());
}

TEST_CASE("embedding matches double-precision roots") {
    for (int n : {3, 5, 9, 21}) {
        auto f = CycField::make(n);
        for (int k = 0; k < n; ++k) {
            cplx direct = std::polar(1.0, 2.0 * 3.14159265358979323846 * k / n);
            CHECK(std::abs(f->zeta(k).to_complex() - direct) < 1e-12);
        }
        // a small arithmetic identity checked both ways
        Cyc a = f->zeta(1) + f->zeta(-1);
        Cyc b = a * a - f->zeta(2) - f->zeta(-2) - f->integer(2);
        CHECK(b.is_zero());
    }
}
