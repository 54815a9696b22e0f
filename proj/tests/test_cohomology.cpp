#include "doctest.h"

#include "dgd/cohomology.hpp"

using namespace dgd;

TEST_CASE("bar differentials compose to zero") {
    for (const char* spec : {"C2", "C4", "S3", "D4"}) {
        auto g = construct_group(spec);
        int64_t n = g->exponent();
        auto bc = bar_complex(g, n);
        auto prod = bc.d2 * bc.d1;
        bool zero = true;
        for (int64_t i = 0; i < prod.rows(); ++i)
            for (int64_t j = 0; j < prod.cols(); ++j)
                if (prod.at(i, j) % n != 0) zero = false;
        CHECK(zero);
    }
}

TEST_CASE("H2 of cyclic groups: raw vs stable") {
    // raw H^2(C_n, mu_n) = Z/n (extension classes), but every class dies over
    // k^x: the stable part is trivial (cyclic groups have trivial Schur
    // multiplier)
    for (int n : {2, 3, 4, 6}) {
        auto g = construct_group("C" + std::to_string(n));
        auto res = h2(g, n, false);
        CHECK(res.stable_order() == 1);
    }
}

TEST_CASE("H2(C2xC2) orders") {
    auto g = construct_group("C2 x C2");
    auto res = h2(g, 4, false);
    CHECK(res.order() == 8);         // Ext(C2^2, Z4) + Hom(H_2, Z4) = 4 * 2
    CHECK(res.stable_order() == 2);  // Schur multiplier Z/2
    for (auto& rep : res.representatives) CHECK(rep.is_cocycle());
}

TEST_CASE("invariant representatives are conjugation invariant") {
    auto g = construct_group("S3");
    auto res = h2(g, 6, true);
    for (auto& rep : res.representatives) {
        CHECK(rep.is_cocycle());
        CHECK(rep.is_invariant());
    }
    // representatives are pairwise non-cohomologous
    for (size_t i = 0; i < res.representatives.size(); ++i)
        for (size_t j = 0; j < res.representatives.size(); ++j) {
            if (i == j) continue;
            auto diff = res.representatives[i].mul(res.representatives[j].inverse_table());
            CHECK(!solve_group_coboundary(diff, {6}).has_value());
        }
}

TEST_CASE("coboundary solver round trip") {
    auto g = construct_group("D4");
    std::vector<int64_t> nu = {0, 1, 3, 2, 1, 0, 2, 3};
    auto beta = coboundary_of(g, 4, nu);
    CHECK(beta.is_cocycle());
    auto sol = solve_group_coboundary(beta, {4});
    REQUIRE(sol.has_value());
    CHECK(coboundary_of(g, sol->conductor, sol->nu).table == beta.lift(sol->conductor).table);
    // beta == 1 -> zero cochain works
    auto triv = trivial_group_cocycle(g, 4);
    auto sol2 = solve_group_coboundary(triv, {4});
    REQUIRE(sol2.has_value());
    CHECK(coboundary_of(g, 4, sol2->nu).is_trivial_table());
}

TEST_CASE("nontrivial class on C2xC2 has no witness at N=2") {
    auto g = construct_group("C2 x C2");
    auto res = h2(g, 2, false);
    bool found_nonsplit = false;
    for (auto& rep : res.representatives)
        if (!solve_group_coboundary(rep, {2}).has_value()) found_nonsplit = true;
    CHECK(found_nonsplit);
}

TEST_CASE("z2 group enumerates genuine cocycles") {
    auto g = construct_group("S3");
    auto z = z2_group(g, 6, true);
    // spot check the first few elements of the enumeration
    std::vector<int64_t> digits(z.gens.size(), 0);
    int checked = 0;
    for (int64_t t = 0; t < 50 && checked < 20; ++t) {
        // mixed-radix increment
        auto x = z.element(digits);
        auto beta = cocycle_from_coords(g, 6, x);
        CHECK(beta.is_cocycle());
        CHECK(beta.is_invariant());
        ++checked;
        int64_t i = (int64_t)digits.size() - 1;
        while (i >= 0) {
            if (++digits[i] < z.orders[i]) break;
            digits[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    CHECK(checked > 0);
}

TEST_CASE("pairings") {
    auto s3 = construct_group("S3");
    auto pc = pairings(s3, PairingKind::Central);
    CHECK(pc.size() == 1);  // Z(S3) = 1
    CHECK(pc[0].f.is_trivial());

    auto k4 = construct_group("C2 x C2");
    CHECK(pairings(k4, PairingKind::Lazy).size() == 16);
    CHECK(pairings(k4, PairingKind::Central).size() == 16);

    auto d4 = construct_group("D4");
    auto pl = pairings(d4, PairingKind::Lazy);
    auto pcd = pairings(d4, PairingKind::Central);
    CHECK(pcd.size() == 4);  // Hom(D4, Z(D4)) = Hom(C2xC2, C2)
    for (auto& p : pcd) {
        // pairing identities at indicator level: multiplicativity is the hom
        // property; conjugation invariance checked here
        for (int t = 0; t < 8; ++t)
            for (int x = 0; x < 8; ++x) CHECK(p.f.map[d4->conj(x, t)] == p.f.map[x]);
    }
    CHECK(pl.size() >= pcd.size());
}
