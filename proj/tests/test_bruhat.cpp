#include "doctest.h"

#include "dgd/bruhat.hpp"

#include <map>
#include <random>
#include <set>

using namespace dgd;

namespace {

DGContext& bctx(const char* spec) {
    static std::map<std::string, DGContext> cache;
    auto it = cache.find(spec);
    if (it == cache.end()) {
        auto g = construct_group(spec);
        it = cache.emplace(spec, make_context(g, g->exponent())).first;
    }
    return it->second;
}

}  // namespace

TEST_CASE("block views") {
    auto& k4 = bctx("C2 x C2");
    auto bv = build_block_view(k4);
    CHECK(bv.H.sub->order() == 1);
    CHECK(bv.n_factors() == 2);
    CHECK(bv.orders == std::vector<int>{2, 2});

    auto& s3 = bctx("S3");
    auto bs = build_block_view(s3);
    CHECK(bs.H.sub->order() == 6);
    CHECK(bs.n_factors() == 0);

    auto& m = bctx("C2 x S3");
    auto bm = build_block_view(m);
    CHECK(bm.H.sub->order() == 6);
    CHECK(bm.n_factors() == 1);
    CHECK(bm.orders == std::vector<int>{2});

    auto& c24 = bctx("C2 x C4");
    auto b24 = build_block_view(c24);
    CHECK(b24.orders == std::vector<int>{2, 4});
}

TEST_CASE("weyl census") {
    CHECK(weyl_census(1) == std::vector<int64_t>{1, 1});
    CHECK(weyl_census(2) == std::vector<int64_t>{4, 16, 4});
    int64_t total = 0;
    for (auto s : weyl_census(2)) total += s;
    CHECK(total == 24);
}

TEST_CASE("gl census formula") {
    auto f1 = gl_census_formula(2, 1);
    CHECK(f1 == std::vector<int64_t>{4, 2});
    auto f2 = gl_census_formula(2, 2);
    CHECK(f2 == std::vector<int64_t>{9216, 10368, 576});
    CHECK(f2[0] + f2[1] + f2[2] == 20160);
}

TEST_CASE("decompose round trip on C2") {
    auto& c2 = bctx("C2");
    auto all = enumerate_all(c2);
    CHECK(all.size() == 6);
    std::map<std::string, int> classes;
    for (auto& m : all) {
        for (auto variant : {DecompVariant::Double, DecompVariant::Left, DecompVariant::Right}) {
            auto cert = decompose(c2, m, variant);
            CHECK(verify_certificate(c2, cert, m).ok);
        }
        classes[reflection_class(c2, m)] += 1;
    }
    CHECK(classes["1"] == 4);
    CHECK(classes["C2"] == 2);
}

TEST_CASE("decompose round trip on C4") {
    auto& c4 = bctx("C4");
    auto all = enumerate_all(c4);
    int64_t total = 0;
    std::map<std::string, int> classes;
    for (auto& m : all) {
        auto cert = decompose(c4, m, DecompVariant::Double);
        CHECK(verify_certificate(c4, cert, m).ok);
        classes[cert.reflection_class] += 1;
        ++total;
    }
    // Aut(C4 x C4-hat) = Aut(C4^2), order 96
    CHECK(total == 96);
    CHECK(classes.count("C4") == 1);
    // a swap automorphism of C4 x C4-hat must reflect the full C4
    bool has_c4 = classes["C4"] > 0;
    CHECK(has_c4);
}

TEST_CASE("decompose round trip on S3 and the exact factorization") {
    auto& s3 = bctx("S3");
    auto all = enumerate_all(s3);
    CHECK(all.size() == 12);
    for (auto& m : all) {
        auto cert = decompose(s3, m, DecompVariant::Double);
        CHECK(verify_certificate(s3, cert, m).ok);
        CHECK(cert.reflection_class == "1");  // purely non-abelian: identity reflection
        auto kf = keilberg_factorize(s3, m);
        CHECK(verify_certificate(s3, kf.order_e_first, m).ok);
        CHECK(verify_certificate(s3, kf.order_e_last, m).ok);
    }
}

TEST_CASE("keilberg uniqueness via counting") {
    auto& s3 = bctx("S3");
    auto all = enumerate_all(s3);
    // |E| |Vc| |V| |B| = 1 * 1 * 6 * 2 = 12 = |Aut|: exactness
    std::set<std::string> seen;
    for (auto& m : all) {
        auto kf = keilberg_factorize(s3, m);
        std::string key;
        for (auto& f : kf.order_e_first.factors) key += f.elt.key() + ";";
        CHECK(seen.insert(key).second);
    }
    CHECK_THROWS_AS(keilberg_factorize(bctx("C2 x C2"), identity_autdg(bctx("C2 x C2"))),
                    NotPurelyNonabelian);
}

TEST_CASE("certificate tampering is detected") {
    auto& s3 = bctx("S3");
    auto all = enumerate_all(s3);
    auto cert = decompose(s3, all[5], DecompVariant::Double);
    CHECK(verify_certificate(s3, cert, all[5]).ok);
    // replace a factor with the identity
    auto tampered = cert;
    bool replaced = false;
    for (auto& f : tampered.factors)
        if (f.kind != FactorKind::Reflection && f.kind != FactorKind::TwistedReflection &&
            !f.elt.is_identity()) {
            f.elt = identity_autdg(s3);
            replaced = true;
            break;
        }
    if (replaced) {
        auto v = verify_certificate(s3, tampered, all[5]);
        CHECK(!v.ok);
    }
}

TEST_CASE("reflection class invariance under allowed cosets") {
    auto& k4 = bctx("C2 x C2");
    auto all = enumerate_all(k4);
    std::mt19937 rng(11);
    auto auts = enumerate_homs(k4.g, k4.g, HomFilter::Automorphisms);
    auto cauts = central_automorphisms(k4.g);
    auto bichars = enumerate_bicharacters(k4);
    auto adata = enumerate_a_data(k4);
    for (int trial = 0; trial < 40; ++trial) {
        auto& phi = all[rng() % all.size()];
        std::string cls = reflection_class(k4, phi);
        // left multiply by (Vc x V) B
        AutDG left = make_V(k4, auts[rng() % auts.size()]);
        left = compose(k4, left, make_Vc(k4, cauts[rng() % cauts.size()]));
        left = compose(k4, left, make_B(k4, bichars[rng() % bichars.size()]));
        CHECK(reflection_class(k4, compose(k4, left, phi)) == cls);
        // right multiply by (Vc x V) E
        AutDG right = make_Vc(k4, cauts[rng() % cauts.size()]);
        right = compose(k4, right, make_V(k4, auts[rng() % auts.size()]));
        right = compose(k4, right, make_E(k4, adata[rng() % adata.size()]));
        CHECK(reflection_class(k4, compose(k4, phi, right)) == cls);
    }
}

TEST_CASE("census on C2 and C2xC2 sample") {
    auto& c2 = bctx("C2");
    auto rep = census(c2);
    CHECK(rep.total == 6);
    std::map<std::string, int64_t> m(rep.class_sizes.begin(), rep.class_sizes.end());
    CHECK(m["1"] == 4);
    CHECK(m["C2"] == 2);
    auto expected = gl_census_formula(2, 1);
    CHECK(m["1"] == expected[0]);
    CHECK(m["C2"] == expected[1]);
}

TEST_CASE("mixed group: decompose random products on C2 x S3") {
    auto& g = bctx("C2 x S3");
    std::mt19937 rng(5);
    std::vector<AutDG> gens;
    for (auto& v : enumerate_homs(g.g, g.g, HomFilter::Automorphisms))
        gens.push_back(make_V(g, v));
    for (auto& be : enumerate_bicharacters(g)) gens.push_back(make_B(g, be));
    for (auto& ad : enumerate_a_data(g)) gens.push_back(make_E(g, ad));
    for (auto& v : central_automorphisms(g.g)) gens.push_back(make_Vc(g, v));
    // a genuine reflection of the C2 factor
    {
        ReflectionDatum rd;
        std::vector<int> c_elems, h_elems;
        auto bv = build_block_view(g);
        rd.H = bv.H;
        rd.C = bv.C[0];
        int64_t half = g.conductor / 2;
        rd.delta_exp = {{0, 0}, {0, half}};
        rd.nu = {0, 0};
        auto r = make_reflection(g, rd);
        gens.push_back(r);
    }
    for (int trial = 0; trial < 12; ++trial) {
        AutDG phi = identity_autdg(g);
        int len = 2 + (int)(rng() % 3);
        for (int k = 0; k < len; ++k) phi = compose(g, phi, gens[rng() % gens.size()]);
        for (auto variant : {DecompVariant::Double, DecompVariant::Right}) {
            auto cert = decompose(g, phi, variant);
            CHECK(verify_certificate(g, cert, phi).ok);
        }
    }
}
