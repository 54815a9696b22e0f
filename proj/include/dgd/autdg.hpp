#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgd/hopf.hpp"

namespace dgd {

struct ADatum;

/// Shared handles for one (G, N): the four Hopf algebras and the dual group
/// of the abelianization, built once.  Enumeration caches fill lazily.
struct DGContext {
    GroupPtr g;
    int64_t conductor;
    HopfData kg, kdual, dg, dgstar;

    int n() const { return g->order(); }
    int dim() const { return dg.dim; }

    mutable std::vector<GroupHom> cache_cauts;
    mutable std::vector<std::vector<std::vector<int64_t>>> cache_bichars;
    mutable std::shared_ptr<void> cache_adata;  // vector<ADatum>
    mutable bool cauts_ready = false, bichars_ready = false;
};

const std::vector<GroupHom>& cached_central_automorphisms(const DGContext& ctx);

DGContext make_context(const GroupPtr& g, int64_t conductor);

/// Hopf algebra map a: k^G -> kG in the structured form of the technical
/// lemma: subgroups A, B <= Z(G) and an isomorphism theta: dual(A) ~= B.
/// Concretely a(e_x) = [x in A] (1/|A|) sum_{h in B} chi_h(x)^{-1} h with
/// chi_h = theta^{-1}(h).
struct ADatum {
    std::vector<int> A, B;                      // sorted ambient element lists
    std::vector<std::vector<int64_t>> chi_exp;  // chi_exp[bi][ai] at conductor N

    bool trivial() const { return A.size() == 1; }
    bool operator==(const ADatum&) const = default;
};

ADatum trivial_a_datum();

/// Element of Aut_Hopf(DG) in canonical structured components (u, b, a, v).
/// u is the dual of ustar, b a bicharacter table, a an ADatum, v a group
/// endomorphism.  Equality of the components is equality of the induced phi.
struct AutDG {
    GroupPtr g;
    int64_t conductor = 1;
    std::vector<int> ustar, vhom;
    std::vector<std::vector<int64_t>> b_exp;  // b(g)(h) = zeta^{b_exp[g][h]}
    ADatum a;

    bool operator==(const AutDG&) const;
    std::string key() const;
    bool is_identity() const;
};

/// Subgroup membership (structural predicates on the canonical components).
bool is_V_element(const AutDG& m);
bool is_Vc_element(const AutDG& m);
bool is_B_element(const AutDG& m);
bool is_E_element(const AutDG& m);

AutDG identity_autdg(const DGContext& ctx);
AutDG make_V(const DGContext& ctx, const GroupHom& v);
AutDG make_Vc(const DGContext& ctx, const GroupHom& v);  // v central automorphism
AutDG make_B(const DGContext& ctx, const std::vector<std::vector<int64_t>>& b_exp);
AutDG make_E(const DGContext& ctx, const ADatum& a);

/// Materialized linear maps of the four components.
struct AutDGMaps {
    LinMap u, b, a, v;
};
AutDGMaps materialize(const DGContext& ctx, const AutDG& m);

/// The induced automorphism phi of DG as a dim x dim matrix,
/// phi(e_g x h) = sum_{g1 g2 = g} u(e_{g1}) b(h)  x  a(e_{g2}) v(h).
Mat phi_table(const DGContext& ctx, const AutDG& m);

/// Validating constructor from raw linear maps (Prop-style matrix):
/// checks Hopf-morphism shapes, the three conditions, and bijectivity.
AutDG from_linmaps(const DGContext& ctx, const Mat& u, const Mat& b, const Mat& a, const Mat& v);

/// Validating constructor from structured components.
AutDG from_components(const DGContext& ctx, const GroupHom& ustar,
                      const std::vector<std::vector<int64_t>>& b_exp, const ADatum& a,
                      const GroupHom& vhom);

/// Recover the components from an automorphism table of DG.
AutDG from_phi_table(const DGContext& ctx, const Mat& phi);

/// Group law: phi(compose(M, M')) = phi(M) o phi(M'), computed by the
/// convolution/composition block formula.
AutDG compose(const DGContext& ctx, const AutDG& m1, const AutDG& m2);
AutDG invert(const DGContext& ctx, const AutDG& m);

/// Reflection data: G = H x C with C abelian, a nondegenerate bicharacter
/// delta on C (the Hopf iso kC ~= k^C), and a nilpotent endomorphism nu of C
/// ("nu = 1_C" in the plain case means the constant-identity map).
struct ReflectionDatum {
    SubgroupView H, C;
    std::vector<std::vector<int64_t>> delta_exp;  // local C x C, at conductor N
    std::vector<int> nu;                          // local C -> C map; all zero = plain
    bool twisted() const {
        for (int x : nu)
            if (x != 0) return true;
        return false;
    }
};

/// Validates the datum (direct factorization, perfect pairing, nilpotency)
/// and builds the twisted reflection through from_components.
AutDG make_reflection(const DGContext& ctx, const ReflectionDatum& d);

/// Complete duplicate-free enumeration of Aut_Hopf(DG), |G| <= 8.
std::vector<AutDG> enumerate_all(const DGContext& ctx);

/// Enumeration helpers, exposed for the decomposition module.
std::vector<ADatum> enumerate_a_data(const DGContext& ctx);
std::vector<std::vector<std::vector<int64_t>>> enumerate_bicharacters(const DGContext& ctx);

/// One matrix per conjugation by a group-like (chi, t) of DG, deduplicated.
std::vector<AutDG> inner_autos(const DGContext& ctx);

/// Lemma-style witness check: does the invertible x realize (phi, sigma)
/// as an internal pair?  sigma is a DG*-cocycle table (dim x dim over the
/// DG* basis).
struct WitnessReport {
    bool ok;
    std::string reason;
    int witness_basis = -1;
};
WitnessReport internal_witness_check(const DGContext& ctx, const std::vector<CycNum>& x,
                                     const AutDG& phi, const Mat& sigma);

}  // namespace dgd
