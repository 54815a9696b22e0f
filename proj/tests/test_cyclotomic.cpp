#include "doctest.h"

#include "dgd/cyclotomic.hpp"
#include "dgd/linalg.hpp"
#include "dgd/snf.hpp"

#include <random>

using namespace dgd;

TEST_CASE("cyclotomic polynomials") {
    auto p1 = cyclotomic_poly(1);  // x - 1
    CHECK(p1 == std::vector<mpz_class>{-1, 1});
    auto p3 = cyclotomic_poly(3);  // x^2 + x + 1
    CHECK(p3 == std::vector<mpz_class>{1, 1, 1});
    auto p4 = cyclotomic_poly(4);  // x^2 + 1
    CHECK(p4 == std::vector<mpz_class>{1, 0, 1});
    auto p12 = cyclotomic_poly(12);  // x^4 - x^2 + 1
    CHECK(p12 == std::vector<mpz_class>{1, 0, -1, 0, 1});
}

TEST_CASE("basic arithmetic in Q(zeta_4)") {
    auto i = CycNum::root(4, 1);
    CHECK(i * i == CycNum(-1, 4));
    CHECK((i * i * i * i).is_one());
    auto z = CycNum(Rat(3, 7), 4) + i;
    CHECK(z * CycNum::one(4) == z);
    CHECK((z * z.inverse()).is_one());
}

TEST_CASE("field axioms on random samples") {
    std::mt19937 rng(7);
    for (int64_t n : {1, 2, 3, 4, 8, 12}) {
        auto rand_elt = [&]() {
            CycNum z = CycNum::zero(n);
            CycNum acc = CycNum::zero(n);
            for (int64_t k = 0; k < n; ++k) {
                int c = (int)(rng() % 7) - 3;
                if (c) acc += CycNum(c, n) * CycNum::root(n, k);
            }
            return acc;
        };
        for (int rep = 0; rep < 12; ++rep) {
            CycNum a = rand_elt(), b = rand_elt(), c = rand_elt();
            CHECK((a + b) * c == a * c + b * c);
            CHECK(a * (b * c) == (a * b) * c);
            CHECK(a + (b + c) == (a + b) + c);
            if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        }
        // zeta^N = 1 and Phi_N(zeta) = 0
        CHECK(CycNum::root(n, 1 % n).conductor() == n);
        CycNum zn = CycNum::one(n);
        for (int64_t k = 0; k < n; ++k) zn = zn * CycNum::root(n, 1);
        CHECK(zn.is_one());
        auto phi = cyclotomic_poly(n);
        CycNum eval = CycNum::zero(n);
        for (size_t k = 0; k < phi.size(); ++k)
            eval += CycNum(Rat(phi[k]), n) * CycNum::root(n, (int64_t)k % n);
        CHECK(eval.is_zero());
    }
}

TEST_CASE("root exponent round trips") {
    for (int64_t n : {2, 3, 4, 6, 8, 12}) {
        for (int64_t k = 0; k < n; ++k) {
            auto e = RootExp(n, k).embed().as_root_exp();
            REQUIRE(e.has_value());
            CHECK(e->exp == k);
        }
    }
    CHECK(CycNum(-1, 4).as_root_exp()->exp == 2);
    auto not_root = CycNum::one(4) + CycNum::root(4, 1);
    CHECK(!not_root.as_root_exp().has_value());
}

TEST_CASE("conductor lifting") {
    auto z3 = CycNum::root(3, 1);
    auto lifted = z3.lift(12);
    CHECK(lifted == CycNum::root(12, 4));
    CycNum a = CycNum::root(3, 1), b = CycNum::root(4, 1);
    to_common_conductor(a, b);
    CHECK(a.conductor() == 12);
    CHECK((a * b) == CycNum::root(12, 7));
    CHECK_THROWS_AS(CycNum::root(3, 1) * CycNum::root(4, 1), ConductorMismatch);
}

TEST_CASE("inverse of root is conjugate exponent") {
    for (int64_t k = 0; k < 8; ++k)
        CHECK(CycNum::root(8, k).inverse() == CycNum::root(8, 8 - k));
}

TEST_CASE("linear algebra over Q(zeta)") {
    Mat m(3, 3, 4);
    m.at(0, 0) = CycNum::root(4, 1);
    m.at(0, 1) = CycNum::one(4);
    m.at(1, 1) = CycNum(2, 4);
    m.at(1, 2) = CycNum::root(4, 3);
    m.at(2, 0) = CycNum::one(4);
    CHECK(m.rank() == 3);
    auto inv = m.inverse();
    REQUIRE(inv.has_value());
    CHECK((*inv * m) == Mat::identity(3, 4));
    Mat sing(2, 2, 4);
    sing.at(0, 0) = CycNum::one(4);
    sing.at(1, 0) = CycNum::one(4);
    CHECK(sing.rank() == 1);
    CHECK(sing.kernel().cols() == 1);
}

TEST_CASE("smith normal form") {
    ZMat a(2, 2);
    a.at(0, 0) = 2;
    a.at(1, 1) = 6;
    a.at(0, 1) = 4;
    auto s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(s.diag == std::vector<mpz_class>{2, 6});
    CHECK(s.u * s.u_inv == ZMat::identity(2));
    CHECK(s.v * s.v_inv == ZMat::identity(2));

    // kernel mod 4 of (2): solutions of 2x == 0 mod 4 -> {0, 2}
    ZMat b(1, 1);
    b.at(0, 0) = 2;
    auto k = kernel_mod(b, 4);
    CHECK(k.size() == 2);

    // solve 3x == 1 mod 4
    ZMat c(1, 1);
    c.at(0, 0) = 3;
    auto x = solve_mod(c, {1}, 4);
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 3);
    // no solution: 2x == 1 mod 4
    CHECK(!solve_mod(b, {1}, 4).has_value());
}
