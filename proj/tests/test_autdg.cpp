#include "doctest.h"

#include "dgd/autdg.hpp"

#include <map>
#include <set>
#include <string>

using namespace dgd;

namespace {

DGContext& ctx_for(const char* spec) {
    static std::map<std::string, DGContext> cache;
    auto it = cache.find(spec);
    if (it == cache.end()) {
        auto g = construct_group(spec);
        it = cache.emplace(spec, make_context(g, g->exponent())).first;
    }
    return it->second;
}

}  // namespace

TEST_CASE("identity and V elements act as expected") {
    auto& ctx = ctx_for("S3");
    auto id = identity_autdg(ctx);
    CHECK(id.is_identity());
    auto phi_id = phi_table(ctx, id);
    CHECK(phi_id == Mat::identity(ctx.dim(), ctx.conductor));

    auto auts = enumerate_homs(ctx.g, ctx.g, HomFilter::Automorphisms);
    for (auto& v : auts) {
        auto m = make_V(ctx, v);
        CHECK(is_V_element(m));
        auto phi = phi_table(ctx, m);
        // e_g x h -> e_{v(g)} x v(h)
        int n = ctx.n();
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                int col = ctx.dg.pair_index(g, h);
                for (int r = 0; r < ctx.dim(); ++r) {
                    bool expect = r == ctx.dg.pair_index(v.map[g], v.map[h]);
                    CHECK(phi.at(r, col).is_one() == expect);
                    CHECK((phi.at(r, col).is_zero() || phi.at(r, col).is_one()));
                }
            }
    }
}

TEST_CASE("B elements scale by the bicharacter") {
    auto& ctx = ctx_for("S3");
    auto bichars = enumerate_bicharacters(ctx);
    CHECK(bichars.size() == 2);  // Hom(C2, dual C2)
    for (auto& be : bichars) {
        auto m = make_B(ctx, be);
        CHECK(is_B_element(m));
        auto phi = phi_table(ctx, m);
        int n = ctx.n();
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                int i = ctx.dg.pair_index(g, h);
                CHECK(phi.at(i, i) == CycNum::root(ctx.conductor, be[h][g]));
            }
    }
}

TEST_CASE("E elements on S3 are trivial, nontrivial on D4") {
    auto& s3 = ctx_for("S3");
    CHECK(enumerate_a_data(s3).size() == 1);  // Z(S3) = 1

    auto& d4 = ctx_for("D4");
    auto ads = enumerate_a_data(d4);
    CHECK(ads.size() == 2);  // (1,1) and (Z,Z) with the unique iso
    int nontrivial = 0;
    for (auto& ad : ads) {
        auto m = make_E(d4, ad);
        CHECK(is_E_element(m));
        if (!ad.trivial()) {
            ++nontrivial;
            // action: e_g x h -> sum_{g1 g2 = g} e_{g1} x a(e_{g2}) h
            auto phi = phi_table(d4, m);
            CHECK(phi.rank() == d4.dim());
        }
    }
    CHECK(nontrivial == 1);
}

TEST_CASE("Vc elements") {
    auto& d4 = ctx_for("D4");
    auto cauts = central_automorphisms(d4.g);
    CHECK(cauts.size() == 4);
    for (auto& v : cauts) {
        auto m = make_Vc(d4, v);
        CHECK(is_Vc_element(m));
        auto phi = phi_table(d4, m);
        int n = d4.n();
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                int col = d4.dg.pair_index(g, h);
                CHECK(phi.at(d4.dg.pair_index(v.map[g], h), col).is_one());
            }
    }
}

TEST_CASE("block composition matches phi composition") {
    auto& ctx = ctx_for("D4");
    // build a pool with all four kinds
    std::vector<AutDG> pool;
    for (auto& v : enumerate_homs(ctx.g, ctx.g, HomFilter::Automorphisms))
        pool.push_back(make_V(ctx, v));
    for (auto& be : enumerate_bicharacters(ctx)) pool.push_back(make_B(ctx, be));
    for (auto& ad : enumerate_a_data(ctx)) pool.push_back(make_E(ctx, ad));
    for (auto& v : central_automorphisms(ctx.g)) pool.push_back(make_Vc(ctx, v));
    // sample pairs deterministically
    for (size_t i = 0; i < pool.size(); i += 3)
        for (size_t j = 1; j < pool.size(); j += 4) {
            auto c = compose(ctx, pool[i], pool[j]);
            CHECK(phi_table(ctx, c) == phi_table(ctx, pool[i]) * phi_table(ctx, pool[j]));
        }
}

TEST_CASE("composition and inverse round trips") {
    auto& ctx = ctx_for("S3");
    auto auts = enumerate_homs(ctx.g, ctx.g, HomFilter::Automorphisms);
    auto bichars = enumerate_bicharacters(ctx);
    auto m1 = make_V(ctx, auts[3]);
    auto m2 = make_B(ctx, bichars[1]);
    auto c = compose(ctx, m1, m2);
    CHECK(phi_table(ctx, c) == phi_table(ctx, m1) * phi_table(ctx, m2));
    auto id = identity_autdg(ctx);
    CHECK(compose(ctx, c, id) == c);
    CHECK(compose(ctx, id, c) == c);
    auto cinv = invert(ctx, c);
    CHECK(compose(ctx, c, cinv) == id);
    CHECK(compose(ctx, cinv, c) == id);
    // two V elements compose to the V element of the composed automorphism
    auto v1 = make_V(ctx, auts[1]), v2 = make_V(ctx, auts[2]);
    CHECK(compose(ctx, v1, v2) == make_V(ctx, auts[1].compose(auts[2])));
}

TEST_CASE("from_components rejects invalid data") {
    auto& ctx = ctx_for("S3");
    // v the trivial endomorphism with u = id: not bijective
    std::vector<int> triv(ctx.n(), 0);
    CHECK_THROWS_AS(
        from_components(ctx, GroupHom::identity(ctx.g), identity_autdg(ctx).b_exp,
                        trivial_a_datum(), GroupHom(ctx.g, ctx.g, triv)),
        Error);
}

TEST_CASE("enumerate_all counts: C2 and C2xC2 (GL over F2), S3") {
    auto& c2 = ctx_for("C2");
    CHECK(enumerate_all(c2).size() == 6);  // |GL_2(F_2)|

    auto& k4 = ctx_for("C2 x C2");
    auto all = enumerate_all(k4);
    CHECK(all.size() == 20160);  // |GL_4(F_2)|

    auto& s3 = ctx_for("S3");
    auto alls3 = enumerate_all(s3);
    CHECK(alls3.size() == 12);  // |E||Vc||V||B| = 1*1*6*2
    std::set<std::string> keys;
    for (auto& m : alls3) keys.insert(m.key());
    CHECK(keys.size() == 12);
}

TEST_CASE("reflections") {
    // full reflection on G = C2
    auto& c2 = ctx_for("C2");
    ReflectionDatum rd;
    rd.H = subgroup_view(c2.g, {0}, "H");
    rd.C = subgroup_view(c2.g, {0, 1}, "C");
    rd.delta_exp = {{0, 0}, {0, 1}};  // the unique perfect pairing on C2
    rd.nu = {0, 0};
    auto r = make_reflection(c2, rd);
    CHECK(!r.is_identity());
    // squares to something with trivial b and a (an element of Vc x V)
    auto r2 = compose(c2, r, r);
    CHECK(r2.a.trivial());
    bool btriv = true;
    for (auto& row : r2.b_exp)
        for (auto e : row) btriv &= e % c2.conductor == 0;
    CHECK(btriv);

    // on F_2^2: the d = 1 reflection of the first factor
    auto& k4 = ctx_for("C2 x C2");
    ReflectionDatum rk;
    // elements of C2xC2 under product indexing: 0=(0,0),1=(0,1),2=(1,0),3=(1,1)
    rk.H = subgroup_view(k4.g, {0, 1}, "H");
    rk.C = subgroup_view(k4.g, {0, 2}, "C");
    rk.delta_exp = {{0, 0}, {0, 1}};
    rk.nu = {0, 0};
    auto rr = make_reflection(k4, rk);
    auto phi = phi_table(k4, rr);
    CHECK(phi.rank() == k4.dim());
    // plain reflections square into Vc x V: trivial b and a blocks
    auto rr2 = compose(k4, rr, rr);
    CHECK(rr2.a.trivial());
    for (auto& row : rr2.b_exp)
        for (auto e : row) CHECK(e % k4.conductor == 0);

    // twisted reflection on C4 with nu squaring away
    auto c4g = construct_group("C4");
    auto c4 = make_context(c4g, 4);
    ReflectionDatum rt;
    rt.H = subgroup_view(c4.g, {0}, "H");
    rt.C = subgroup_view(c4.g, {0, 1, 2, 3}, "C");
    rt.delta_exp.assign(4, std::vector<int64_t>(4, 0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rt.delta_exp[i][j] = (i * j) % 4;
    rt.nu = {0, 2, 0, 2};  // g -> g^2, nu^2 trivial
    auto rtw = make_reflection(c4, rt);
    CHECK(rtw.vhom != std::vector<int>{0, 0, 0, 0});
    CHECK(phi_table(c4, rtw).rank() == c4.dim());
}

TEST_CASE("inner automorphisms") {
    auto& k4 = ctx_for("C2 x C2");
    CHECK(inner_autos(k4).size() == 1);

    auto& s3 = ctx_for("S3");
    auto inn = inner_autos(s3);
    CHECK(inn.size() == 6);  // Inn(S3) = S3
    // each inner automorphism is the V element of a conjugation
    for (auto& m : inn) CHECK(is_V_element(m));
}

TEST_CASE("internal witness check") {
    auto& s3 = ctx_for("S3");
    int64_t N = s3.conductor;
    // x = group-like (trivial chi, t): conjugation matches the inner V element
    int t = 3;
    std::vector<CycNum> x(s3.dim(), CycNum::zero(N));
    for (int g = 0; g < s3.n(); ++g) x[s3.dg.pair_index(g, t)] = CycNum::one(N);
    std::vector<int> conj_map(s3.n());
    for (int g = 0; g < s3.n(); ++g) conj_map[g] = s3.g->conj(g, s3.g->inv(t));  // t g t^-1
    auto phi = make_V(s3, GroupHom(s3.g, s3.g, conj_map));
    Mat sigma_triv(s3.dim(), s3.dim(), N);
    for (int i = 0; i < s3.n(); ++i)
        for (int j = 0; j < s3.n(); ++j)
            sigma_triv.at(s3.dgstar.pair_index(i, 0), s3.dgstar.pair_index(j, 0)) = CycNum::one(N);
    auto rep = internal_witness_check(s3, x, phi, sigma_triv);
    CHECK(rep.ok);
    // wrong phi: identity is not conjugation by a non-central group-like
    auto rep2 = internal_witness_check(s3, x, identity_autdg(s3), sigma_triv);
    CHECK(!rep2.ok);
}
