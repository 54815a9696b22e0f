#include "doctest.h"

#include "dgd/hopf.hpp"

#include <map>

using namespace dgd;

namespace {

bool is_algebra_map(const LinMap& f) {
    const HopfData& S = *f.src;
    const HopfData& D = *f.dst;
    if (f.apply(S.unit) != D.unit) return false;
    for (int a = 0; a < S.dim; ++a)
        for (int b = 0; b < S.dim; ++b) {
            std::vector<CycNum> img(D.dim, CycNum::zero(D.conductor));
            for (const auto& t : S.product(a, b)) {
                auto fa = f.apply_basis(t.idx);
                for (int i = 0; i < D.dim; ++i) img[i] += t.c * fa[i];
            }
            if (img != D.mul_vec(f.apply_basis(a), f.apply_basis(b))) return false;
        }
    return true;
}

bool is_coalgebra_map(const LinMap& f) {
    const HopfData& S = *f.src;
    const HopfData& D = *f.dst;
    for (int a = 0; a < S.dim; ++a) {
        std::map<std::pair<int, int>, CycNum> lhs, rhs;
        auto zero = CycNum::zero(D.conductor);
        auto fa = f.apply_basis(a);
        for (int i = 0; i < D.dim; ++i) {
            if (fa[i].is_zero()) continue;
            for (const auto& t : D.comul[i]) {
                auto it = lhs.emplace(std::make_pair(t.left, t.right), zero).first;
                it->second += fa[i] * t.c;
            }
        }
        for (const auto& t : S.comul[a]) {
            auto fl = f.apply_basis(t.left);
            auto fr = f.apply_basis(t.right);
            for (int i = 0; i < D.dim; ++i) {
                if (fl[i].is_zero()) continue;
                for (int j = 0; j < D.dim; ++j) {
                    if (fr[j].is_zero()) continue;
                    auto it = rhs.emplace(std::make_pair(i, j), zero).first;
                    it->second += t.c * fl[i] * fr[j];
                }
            }
        }
        for (auto& [k, v] : lhs) {
            auto it = rhs.find(k);
            if (!(v == (it == rhs.end() ? zero : it->second))) return false;
        }
        for (auto& [k, v] : rhs)
            if (lhs.find(k) == lhs.end() && !v.is_zero()) return false;
        CycNum e = zero;
        for (int i = 0; i < D.dim; ++i) e += fa[i] * D.counit[i];
        if (!(e == S.counit[a])) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("axioms pass for all four algebras on small groups") {
    for (const char* spec : {"C2", "C4", "C2 x C2", "S3"}) {
        auto g = construct_group(spec);
        for (auto kind : {HopfKind::GroupAlgebra, HopfKind::FunctionAlgebra,
                          HopfKind::DrinfeldDouble, HopfKind::DrinfeldDoubleDual}) {
            auto h = build_hopf(kind, g, g->exponent());
            CHECK(verify_axioms(h).all_pass());
        }
    }
}

TEST_CASE("DG product matches the conjugation rule") {
    auto s3 = construct_group("S3");
    auto dg = build_hopf(HopfKind::DrinfeldDouble, s3, 6);
    int n = s3->order();
    int r = -1, t = -1;
    for (int i = 1; i < n; ++i) {
        if (s3->element_order(i) == 3 && r < 0) r = i;
        if (s3->element_order(i) == 2 && t < 0) t = i;
    }
    int trt = s3->conj(t, r);  // r^-1 t r
    // (e_t x r)(e_{trt} x 1) = e_t x r
    const auto& prod = dg.product(dg.pair_index(t, r), dg.pair_index(trt, 0));
    REQUIRE(prod.size() == 1);
    CHECK(prod[0].idx == dg.pair_index(t, r));
    CHECK(prod[0].c.is_one());
    if (t != trt) CHECK(dg.product(dg.pair_index(t, r), dg.pair_index(t, 0)).empty());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            CHECK(dg.counit[dg.pair_index(x, y)].is_one() == (x == 0));
}

TEST_CASE("DG* products vanish across distinct delta factors") {
    auto d4 = construct_group("D4");
    auto dgs = build_hopf(HopfKind::DrinfeldDoubleDual, d4, 4);
    int n = d4->order();
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < n; ++y)
            for (int yp = 0; yp < n; ++yp) {
                const auto& p = dgs.product(dgs.pair_index(x, y), dgs.pair_index(1, yp));
                if (y != yp) CHECK(p.empty());
            }
}

TEST_CASE("fault injection is caught") {
    auto g = construct_group("C2 x C2");
    auto dg = build_hopf(HopfKind::DrinfeldDouble, g, 2);
    dg.mul[3 * dg.dim + 5].clear();
    dg.mul[3 * dg.dim + 5].push_back({7, CycNum::one(2)});
    auto rep = verify_axioms(dg);
    CHECK(!rep.all_pass());
    bool assoc_failed = false;
    for (auto& r : rep.results)
        if (r.axiom == "associativity" && !r.pass) {
            assoc_failed = true;
            CHECK(r.witness.size() == 3);
        }
    CHECK(assoc_failed);
}

TEST_CASE("convolution identity and characters") {
    auto g = construct_group("C4");
    auto kg = build_hopf(HopfKind::GroupAlgebra, g, 4);
    auto kdual = build_hopf(HopfKind::FunctionAlgebra, g, 4);
    LinMap f(&kg, &kdual);
    for (int i = 0; i < 4; ++i) f.mat.at((i * 3) % 4, i) = CycNum::root(4, i);
    auto e = convolution_unit(&kg, &kdual);
    CHECK(convolve(f, e) == f);
    CHECK(convolve(e, f) == f);

    auto dd = dual_group(g);
    auto chi_map = [&](int chi) {
        LinMap m(&kg, &kg);
        for (int x = 0; x < 4; ++x) m.mat.at(0, x) = dd.eval(chi, x).embed();
        return m;  // kG -> k * identity-coefficient
    };
    auto c3 = convolve(chi_map(1), chi_map(2));
    CHECK(c3 == chi_map(3));
}

TEST_CASE("convolution associativity") {
    auto g = construct_group("S3");
    auto kg = build_hopf(HopfKind::GroupAlgebra, g, 6);
    auto kd = build_hopf(HopfKind::FunctionAlgebra, g, 6);
    LinMap f(&kg, &kd), h(&kg, &kd), k(&kg, &kd);
    for (int i = 0; i < 6; ++i) {
        f.mat.at((i * 5) % 6, i) = CycNum::root(6, i);
        h.mat.at(i, i) = CycNum(1 + (i % 2), 6);
        k.mat.at((i + 2) % 6, i) = CycNum::one(6);
    }
    CHECK(convolve(convolve(f, h), k) == convolve(f, convolve(h, k)));
}

TEST_CASE("DG and DG* are dual") {
    auto g = construct_group("S3");
    auto dg = build_hopf(HopfKind::DrinfeldDouble, g, 6);
    auto dgs = build_hopf(HopfKind::DrinfeldDoubleDual, g, 6);
    auto zero = CycNum::zero(6);
    // <m n, xi> = <m (x) n, Delta xi>
    for (int m = 0; m < dg.dim; ++m)
        for (int nn = 0; nn < dg.dim; ++nn) {
            std::vector<CycNum> prod(dg.dim, zero);
            for (const auto& t : dg.product(m, nn)) prod[t.idx] += t.c;
            for (int xi = 0; xi < dgs.dim; ++xi) {
                CycNum rhs = zero;
                for (const auto& t : dgs.comul[xi])
                    if (t.left == m && t.right == nn) rhs += t.c;
                CHECK(prod[xi] == rhs);
            }
        }
    // <Delta m, xi (x) zeta> = <m, xi zeta>
    for (int m = 0; m < dg.dim; ++m)
        for (int xi = 0; xi < dgs.dim; ++xi)
            for (int zt = 0; zt < dgs.dim; ++zt) {
                CycNum lhs = zero;
                for (const auto& t : dg.comul[m])
                    if (t.left == xi && t.right == zt) lhs += t.c;
                CycNum rhs = zero;
                for (const auto& t : dgs.product(xi, zt))
                    if (t.idx == m) rhs += t.c;
                CHECK(lhs == rhs);
            }
}

TEST_CASE("DA matches k(dual A x A) for abelian A") {
    auto a = construct_group("C2 x C4");
    int n = a->order();
    int64_t N = a->exponent();
    auto da = build_hopf(HopfKind::DrinfeldDouble, a, N);
    auto dd = dual_group(a);
    auto gamma_group = direct_product(dd.dual, a);
    auto T = [&](int gamma) {
        int chi = gamma / n, x = gamma % n;
        std::vector<CycNum> v(da.dim, CycNum::zero(N));
        for (int g = 0; g < n; ++g) v[da.pair_index(g, x)] = dd.eval(chi, g).embed();
        return v;
    };
    for (int g1 = 0; g1 < gamma_group->order(); ++g1)
        for (int g2 = 0; g2 < gamma_group->order(); ++g2)
            CHECK(da.mul_vec(T(g1), T(g2)) == T(gamma_group->mul(g1, g2)));
    for (int g1 = 0; g1 < gamma_group->order(); ++g1) {
        auto v = T(g1);
        std::map<std::pair<int, int>, CycNum> delta;
        auto zero = CycNum::zero(N);
        for (int i = 0; i < da.dim; ++i) {
            if (v[i].is_zero()) continue;
            for (const auto& t : da.comul[i]) {
                auto it = delta.emplace(std::make_pair(t.left, t.right), zero).first;
                it->second += v[i] * t.c;
            }
        }
        for (int i = 0; i < da.dim; ++i)
            for (int j = 0; j < da.dim; ++j) {
                auto it = delta.find({i, j});
                CycNum got = it == delta.end() ? zero : it->second;
                CHECK(got == v[i] * v[j]);
            }
    }
}

TEST_CASE("canonical maps") {
    auto g = construct_group("S3");
    auto kg = build_hopf(HopfKind::GroupAlgebra, g, 6);
    auto kd = build_hopf(HopfKind::FunctionAlgebra, g, 6);
    auto dgs = build_hopf(HopfKind::DrinfeldDoubleDual, g, 6);
    auto cm = canonical_maps(kg, kd, dgs);
    CHECK(cm.p.compose(cm.t).mat == Mat::identity(6, 6));
    CHECK(cm.s.compose(cm.iota).mat == Mat::identity(6, 6));
    CHECK(cm.p.compose(cm.iota) == convolution_unit(&kd, &kg));
    CHECK(is_algebra_map(cm.iota));
    CHECK(is_coalgebra_map(cm.iota));
    CHECK(is_algebra_map(cm.p));
    CHECK(is_coalgebra_map(cm.p));
    CHECK(is_coalgebra_map(cm.s));
    CHECK(is_algebra_map(cm.t));
}

TEST_CASE("trivial twists change nothing") {
    auto g = construct_group("S3");
    auto kd = build_hopf(HopfKind::FunctionAlgebra, g, 6);
    Mat triv(kd.dim, kd.dim, 6);
    for (int i = 0; i < kd.dim; ++i)
        for (int j = 0; j < kd.dim; ++j) triv.at(i, j) = kd.counit[i] * kd.counit[j];
    auto tw = twist_algebra(kd, triv);
    CHECK(tw.associative());
    for (int a = 0; a < kd.dim; ++a)
        for (int b = 0; b < kd.dim; ++b) {
            auto& lhs = tw.mul[a * kd.dim + b];
            auto& rhs = kd.product(a, b);
            CHECK(lhs.size() == rhs.size());
            for (auto& t : lhs) {
                bool found = false;
                for (auto& u : rhs) found |= u.idx == t.idx && u.c == t.c;
                CHECK(found);
            }
        }
    auto ddt = doi_twist(kd, triv, triv);
    CHECK(verify_axioms(ddt).all_pass());
}

TEST_CASE("element and 1-cochain inverses") {
    auto g = construct_group("S3");
    auto dg = build_hopf(HopfKind::DrinfeldDouble, g, 6);
    std::vector<CycNum> x(dg.dim, CycNum::zero(6));
    for (int gg = 0; gg < 6; ++gg) x[dg.pair_index(gg, 1)] = CycNum::one(6);
    auto xi = dg.invert_element(x);
    CHECK(dg.mul_vec(x, xi) == dg.unit);
    std::vector<CycNum> y(dg.dim, CycNum::zero(6));
    y[dg.pair_index(1, 0)] = CycNum::one(6);
    CHECK(!dg.is_invertible(y));

    auto dgs = build_hopf(HopfKind::DrinfeldDoubleDual, g, 6);
    std::vector<CycNum> f(dgs.counit);
    f[dgs.pair_index(1, 0)] += CycNum::root(6, 1);
    auto finv = conv1_inverse(dgs, f);
    CHECK(conv1(dgs, f, finv) == std::vector<CycNum>(dgs.counit));
}
