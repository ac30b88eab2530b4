#include <doctest.h>

#include "dwlink/group.hpp"

using namespace dwlink;

TEST_CASE("trivial group") {
    auto g = build_named_group("Z1");
    CHECK(g->order() == 1);
    CHECK(conjugacy_classes(*g).size() == 1);
    CHECK(irreps(*g).size() == 1);
}

TEST_CASE("cyclic group characters") {
    auto g = build_named_group("Z3");
    auto reps = irreps(*g);
    REQUIRE(reps.size() == 3);
    // all characters are powers of e^{2 pi i/3}
    for (const auto& r : reps) {
        CHECK(r.dim == 1);
        for (int a = 0; a < 3; ++a) CHECK(std::abs(std::abs(r.char_at(a)) - 1.0) < kTol);
    }
    // character orthogonality
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = 0; j < reps.size(); ++j) {
            cplx s = 0;
            for (int a = 0; a < 3; ++a) s += reps[i].char_at(a) * std::conj(reps[j].char_at(a));
            s /= 3.0;
            CHECK(std::abs(s - (i == j ? cplx(1, 0) : cplx(0, 0))) < kTol);
        }
}

TEST_CASE("dihedral group structure") {
    auto d5 = build_named_group("D5");
    CHECK(d5->order() == 10);
    auto classes = conjugacy_classes(*d5);
    CHECK(classes.size() == 4); // (5+3)/2
    auto reps = irreps(*d5);
    REQUIRE(reps.size() == 4);
    CHECK(reps[0].dim == 1);
    CHECK(reps[1].dim == 1);
    CHECK(reps[2].dim == 2);
    CHECK(reps[3].dim == 2);

    auto d7 = build_named_group("D7");
    auto c7 = conjugacy_classes(*d7);
    REQUIRE(c7.size() == 5);
    // {e}, three rotation pairs, one reflection class of size 7
    CHECK(c7[0].members.size() == 1);
    CHECK(c7[1].members.size() == 2);
    CHECK(c7[2].members.size() == 2);
    CHECK(c7[3].members.size() == 2);
    CHECK(c7[4].members.size() == 7);
}

TEST_CASE("S3 structure via brute-force conjugation") {
    auto g = build_named_group("S3");
    CHECK(g->order() == 6);
    CHECK(conjugacy_classes(*g).size() == 3);
    auto reps = irreps(*g);
    REQUIRE(reps.size() == 3);
    CHECK(reps[0].dim == 1);
    CHECK(reps[1].dim == 1);
    CHECK(reps[2].dim == 2);
}

TEST_CASE("Q8 classes and irreps") {
    auto g = build_named_group("Q8");
    auto classes = conjugacy_classes(*g);
    REQUIRE(classes.size() == 5);
    std::vector<size_t> sizes;
    for (const auto& c : classes) sizes.push_back(c.members.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{1, 1, 2, 2, 2});
    auto reps = irreps(*g);
    int sumsq = 0;
    for (const auto& r : reps) sumsq += r.dim * r.dim;
    CHECK(reps.size() == 5);
    CHECK(sumsq == 8);
}

TEST_CASE("S4 centralizer orders") {
    auto g = build_named_group("S4");
    auto classes = conjugacy_classes(*g);
    CHECK(classes.size() == 5);
    for (const auto& c : classes)
        CHECK(static_cast<int>(c.members.size()) * c.centralizer->order() == 24);
    auto reps = irreps(*g);
    int sumsq = 0;
    for (const auto& r : reps) sumsq += r.dim * r.dim;
    CHECK(sumsq == 24);
}

TEST_CASE("group table file format") {
    CHECK_THROWS(group_from_table_text("2\n0 1 1", "bad"));
    auto z2 = group_from_table_text("2\n0 1\n1 0\n", "z2file");
    CHECK(z2->order() == 2);
    CHECK(z2->inv(1) == 1);
    // inconsistent table: no identity
    CHECK_THROWS(group_from_table_text("2\n1 1\n1 1\n", "bad2"));
    CHECK_THROWS(build_named_group("frobnicate"));
}

TEST_CASE("character orthogonality for every supported family") {
    for (const char* spec : {"Z1", "Z2", "Z5", "D3", "D5", "S3", "S4", "Q8"}) {
        auto g = build_named_group(spec);
        auto reps = irreps(*g);
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = 0; j < reps.size(); ++j) {
                cplx s = 0;
                for (int a = 0; a < g->order(); ++a)
                    s += reps[i].char_at(a) * std::conj(reps[j].char_at(a));
                s /= static_cast<double>(g->order());
                CAPTURE(spec);
                CHECK(std::abs(s - (i == j ? cplx(1, 0) : cplx(0, 0))) < 1e-9);
            }
    }
}
