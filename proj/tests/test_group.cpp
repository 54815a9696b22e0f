#include "doctest.h"

#include "dgd/group.hpp"

#include <set>

using namespace dgd;

TEST_CASE("presets and products") {
    auto k4 = construct_group("C2 x C2");
    CHECK(k4->order() == 4);
    CHECK(k4->is_abelian());
    CHECK(k4->exponent() == 2);

    auto s3 = construct_group("S3");
    CHECK(s3->order() == 6);
    CHECK(s3->center().size() == 1);

    auto d4 = construct_group("D4");
    CHECK(d4->order() == 8);
    CHECK(d4->center().size() == 2);

    auto q8 = construct_group("Q8");
    CHECK(q8->order() == 8);
    CHECK(q8->center().size() == 2);
    int minus_one = q8->mul(2, 2);  // i*i
    CHECK(q8->element_order(minus_one) == 2);

    auto mixed = construct_group("C2 x S3");
    CHECK(mixed->order() == 12);
    CHECK(construct_group("C2xC2")->order() == 4);
}

TEST_CASE("invalid table rejected") {
    // 2x2 "table" breaking associativity/inverses
    std::vector<std::vector<int>> bad = {{0, 1}, {1, 1}};
    CHECK_THROWS_AS(group_from_table(bad), TableInvalid);
}

TEST_CASE("invariants") {
    auto s3 = construct_group("S3");
    auto inv = group_invariants(s3);
    CHECK(inv.center == std::vector<int>{0});
    CHECK(inv.abelianization->order() == 2);
    CHECK(inv.conjugacy_classes.size() == 3);

    auto d4 = construct_group("D4");
    auto invd = group_invariants(d4);
    CHECK(invd.center.size() == 2);
    CHECK(invd.abelianization->order() == 4);
    CHECK(invd.abelianization->exponent() == 2);

    auto a = construct_group("C6");
    auto inva = group_invariants(a);
    CHECK((int)inva.center.size() == 6);
    CHECK(inva.commutator.size() == 1);
}

TEST_CASE("hom enumeration") {
    auto k4 = construct_group("C2 x C2");
    auto aut = enumerate_homs(k4, k4, HomFilter::Automorphisms);
    CHECK(aut.size() == 6);  // GL_2(F_2)

    auto s3 = construct_group("S3");
    auto c2 = construct_group("C2");
    CHECK(enumerate_homs(s3, c2, HomFilter::All).size() == 2);

    auto c4 = construct_group("C4");
    CHECK(enumerate_homs(c4, c4, HomFilter::Automorphisms).size() == 2);

    // closure under composition and inverse
    auto auts3 = enumerate_homs(s3, s3, HomFilter::Automorphisms);
    CHECK(auts3.size() == 6);
    std::set<std::vector<int>> maps;
    for (auto& f : auts3) maps.insert(f.map);
    for (auto& f : auts3)
        for (auto& g : auts3) {
            CHECK(maps.count(f.compose(g).map) == 1);
            CHECK(maps.count(f.inverse().map) == 1);
        }
}

TEST_CASE("central automorphisms") {
    auto s3 = construct_group("S3");
    CHECK(central_automorphisms(s3).size() == 1);
    auto k4 = construct_group("C2 x C2");
    CHECK(central_automorphisms(k4).size() == 6);  // abelian: all of Aut
    auto d4 = construct_group("D4");
    auto cd4 = central_automorphisms(d4);
    CHECK(cd4.size() == 4);  // Hom(D4_ab, Z(D4)) = Hom(C2xC2, C2)
}

TEST_CASE("abelian decomposition") {
    auto c6 = construct_group("C6");
    auto dec = abelian_decomposition(c6);
    CHECK(dec.invariant_factors == std::vector<int>{6});
    CHECK(dec.primary_orders == std::vector<int>{2, 3});

    auto g = construct_group("C2 x C4");
    auto dec2 = abelian_decomposition(g);
    CHECK(dec2.invariant_factors == std::vector<int>{2, 4});
    CHECK(dec2.primary_orders == std::vector<int>{2, 4});
    // generators generate and have the claimed orders
    CHECK(g->generated_subgroup(dec2.invariant_generators).size() == 8);
    for (size_t i = 0; i < dec2.invariant_factors.size(); ++i)
        CHECK(g->element_order(dec2.invariant_generators[i]) == dec2.invariant_factors[i]);
}

TEST_CASE("dual group") {
    auto c2 = construct_group("C2");
    auto d = dual_group(c2);
    CHECK(d.conductor == 2);
    CHECK(d.table.size() == 2);
    CHECK(d.eval(1, 1) == RootExp(2, 1));  // sign character

    auto k4 = construct_group("C2 x C2");
    auto dk = dual_group(k4);
    for (int chi = 0; chi < 4; ++chi)
        for (int a = 0; a < 4; ++a) CHECK(dk.eval(chi, a).pow(2).is_one());

    auto c4 = construct_group("C4");
    auto dc = dual_group(c4);
    CHECK(dc.conductor == 4);
    bool faithful = false;
    for (int chi = 0; chi < 4; ++chi) {
        std::set<int64_t> vals;
        for (int a = 0; a < 4; ++a) vals.insert(dc.eval(chi, a).exp);
        if (vals.size() == 4) faithful = true;
    }
    CHECK(faithful);
    // multiplicativity
    for (int chi = 0; chi < 4; ++chi)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                CHECK(dc.eval(chi, c4->mul(a, b)) == dc.eval(chi, a) * dc.eval(chi, b));
    CHECK_THROWS_AS(dual_group(construct_group("S3")), NotAbelian);
}

TEST_CASE("structure search") {
    auto s3 = construct_group("S3");
    auto nab = normal_abelian_subgroups(s3);
    CHECK(nab.size() == 2);  // {1}, A3
    // only (S3, 1): the complement must be abelian
    CHECK(direct_factorizations(s3).size() == 1);
    for (auto& [h, c] : direct_factorizations(s3)) CHECK(c.size() == 1);

    auto g = construct_group("C2 x S3");
    bool found = false;
    for (auto& [h, c] : direct_factorizations(g))
        if (h.size() == 6 && c.size() == 2) found = true;
    CHECK(found);
}

TEST_CASE("quotients and subgroup views") {
    auto d4 = construct_group("D4");
    auto z = d4->center();
    auto q = quotient_group(d4, z);
    CHECK(q.quot->order() == 4);
    CHECK(q.quot->is_abelian());
    auto sv = subgroup_view(d4, z, "Z");
    CHECK(sv.sub->order() == 2);
    CHECK(sv.embed.size() == 2);
}
