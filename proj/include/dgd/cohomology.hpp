#pragma once

#include <optional>
#include <vector>

#include "dgd/group.hpp"
#include "dgd/snf.hpp"

namespace dgd {

/// Exponent-form group cochains: a 1-cochain is a vector nu[g] in Z/N with
/// nu[1] = 0, a 2-cochain a table beta[g][h] in Z/N, normalized
/// (beta(1,.) = beta(.,1) = 0).  Values represent zeta_N^e.

/// Bar differentials on normalized cochains as integer matrices acting on
/// exponent vectors mod N.  Coordinates: 1-cochains on G \ {1}; 2-cochains on
/// (G \ {1})^2.
struct BarComplexSlice {
    GroupPtr group;
    int64_t n;       // coefficient modulus (mu_N)
    ZMat d1;         // C^1 -> C^2
    ZMat d2;         // C^2 -> C^3
    int m1, m2, m3;  // dimensions

    int idx1(int g) const { return g - 1; }
    int idx2(int g, int h) const { return (g - 1) * (group->order() - 1) + (h - 1); }
};

BarComplexSlice bar_complex(const GroupPtr& g, int64_t n);

/// Group 2-cocycle in exponent form, full |G| x |G| table (normalized rows
/// and columns at the identity).
struct GroupCocycleExp {
    GroupPtr group;
    int64_t n;
    std::vector<std::vector<int64_t>> table;

    int64_t operator()(int g, int h) const { return table[g][h]; }
    bool is_cocycle() const;
    bool is_invariant() const;  // beta(g,h) = beta(g^t, h^t)
    GroupCocycleExp mul(const GroupCocycleExp& o) const;
    GroupCocycleExp inverse_table() const;
    GroupCocycleExp lift(int64_t m) const;
    bool is_trivial_table() const;
};

GroupCocycleExp trivial_group_cocycle(const GroupPtr& g, int64_t n);
GroupCocycleExp coboundary_of(const GroupPtr& g, int64_t n, const std::vector<int64_t>& nu);

/// H^2(G, mu_N) (optionally the conjugation-invariant variant with invariant
/// coboundaries only).  Representatives are exponent tables.
struct H2Result {
    std::vector<int64_t> invariant_factors;         // of the cohomology group
    std::vector<GroupCocycleExp> representatives;   // one per invariant factor
    std::vector<int64_t> stable_invariant_factors;  // image in H^2(G, mu_{N * |G|})
    mpz_class order() const {
        mpz_class s = 1;
        for (auto d : invariant_factors) s *= d;
        return s;
    }
    mpz_class stable_order() const {
        mpz_class s = 1;
        for (auto d : stable_invariant_factors) s *= d;
        return s;
    }
};

H2Result h2(const GroupPtr& g, int64_t n, bool invariant);

/// The full group Z^2 (or Z^2_inv) of mu_N-valued cocycles as a SolutionGroup
/// in 2-cochain coordinates (enumerable).
SolutionGroup z2_group(const GroupPtr& g, int64_t n, bool invariant);
GroupCocycleExp cocycle_from_coords(const GroupPtr& g, int64_t n, const std::vector<int64_t>& x);

/// Solve beta = d(nu); escalates through the conductor schedule (the table
/// lifts along mu_N -> mu_M).  Returns nu in exponent form at the schedule
/// conductor that succeeded, or nullopt.
struct CoboundarySolution {
    int64_t conductor;
    std::vector<int64_t> nu;  // length |G|, nu[0] = 0
};
std::optional<CoboundarySolution> solve_group_coboundary(const GroupCocycleExp& beta,
                                                         const std::vector<int64_t>& schedule,
                                                         bool invariant_witness = false);

/// Lazy / central bialgebra pairing in indicator normal form:
/// lambda(g, e_x) = [x = f(g)] for a homomorphism f.
struct PairingHom {
    GroupHom f;
    bool central;  // image inside Z(G)
};

enum class PairingKind { Lazy, Central };
std::vector<PairingHom> pairings(const GroupPtr& g, PairingKind kind);

}  // namespace dgd
