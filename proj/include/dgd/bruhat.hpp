#pragma once

#include <string>
#include <vector>

#include "dgd/autdg.hpp"

namespace dgd {

/// Reference decomposition G = H x C1 x ... x Cn with H purely non-abelian
/// and Ci cyclic of prime-power order, non-decreasing.
struct BlockView {
    SubgroupView H;
    std::vector<SubgroupView> C;
    std::vector<int> hpart;               // g -> H component (ambient index)
    std::vector<std::vector<int>> cpart;  // cpart[i][g] -> C_i component (ambient)
    std::vector<int> orders;              // |C_i|

    int n_factors() const { return (int)C.size(); }
};

BlockView build_block_view(const DGContext& ctx);

enum class FactorKind { V, Vc, B, E, Reflection, TwistedReflection };

struct CertFactor {
    FactorKind kind;
    AutDG elt;
};

struct DecompositionCert {
    std::string variant;  // double | left | right | keilberg | keilberg_rev
    std::string phi_key;
    std::vector<CertFactor> factors;   // product in recorded order reproduces phi
    std::string reflection_class;      // e.g. "1", "C2", "C2xC2", "C4"
};

enum class DecompVariant { Double, Left, Right };

/// The constructive elimination of the cell theorem.  Emits a verified
/// certificate whose factors multiply back to phi.
DecompositionCert decompose(const DGContext& ctx, const AutDG& phi, DecompVariant variant);

/// Isomorphism type of the reflected subgroup C (invariant factors), via the
/// double variant.
std::string reflection_class(const DGContext& ctx, const AutDG& phi);

/// Exact factorization for purely non-abelian G, in both orders
/// E((Vc x V) B) and ((Vc x V) B) E.
struct KeilbergFactorization {
    DecompositionCert order_e_first;   // phi = E * Vc * V * B
    DecompositionCert order_e_last;    // phi = Vc * V * B * E
};
KeilbergFactorization keilberg_factorize(const DGContext& ctx, const AutDG& phi);

struct VerifyResult {
    bool ok;
    std::string diagnosis;
    int failing_factor = -1;
};
VerifyResult verify_certificate(const DGContext& ctx, const DecompositionCert& cert,
                                const AutDG& phi);

struct CensusReport {
    std::vector<std::pair<std::string, int64_t>> class_sizes;  // keyed by reflection class
    int64_t total = 0;
};

/// Partition of the full enumeration into double cosets keyed by the
/// reflection class.
CensusReport census(const DGContext& ctx);

/// Double cosets of S_n x S_n in S_{2n}, by brute force over permutations.
/// Returns the coset sizes keyed by the number of swapped coordinates.
std::vector<int64_t> weyl_census(int n);

/// Expected GL_{2n}(F_p) double-coset sizes for G = F_p^n (the displayed
/// census size formula); implemented for n = 1, 2.
std::vector<int64_t> gl_census_formula(int64_t p, int n);

}  // namespace dgd
