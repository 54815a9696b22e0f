#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgd/cyclotomic.hpp"
#include "dgd/error.hpp"

namespace dgd {

/// Finite group given by its multiplication table.  Identity has index 0.
/// Immutable after validation; every substructure below refers to elements
/// by their index in the ambient group.
class FiniteGroup {
public:
    /// Validates associativity, identity and inverses (throws TableInvalid).
    FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> labels,
                std::string name);

    int order() const { return n_; }
    int mul(int a, int b) const { return mul_[a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int t) const { return mul(mul(inv(t), g), t); }  // g^t = t^{-1} g t
    int element_order(int a) const { return elt_order_[a]; }
    int exponent() const { return exponent_; }
    const std::string& label(int a) const { return labels_[a]; }
    const std::string& name() const { return name_; }

    bool is_abelian() const;
    std::vector<int> center() const;
    std::vector<std::vector<int>> conjugacy_classes() const;
    std::vector<int> commutator_subgroup() const;

    /// Closure of a set of generators.
    std::vector<int> generated_subgroup(const std::vector<int>& gens) const;
    /// A short generating sequence (greedy).
    std::vector<int> small_generating_set() const;

    int pow(int g, int64_t k) const;

private:
    int n_;
    std::vector<int> mul_, inv_, elt_order_;
    std::vector<std::string> labels_;
    std::string name_;
    int exponent_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Presets: C<n>, Dih<n>, S3, D4, Q8; products "A x B"; table files via
/// group_from_table.
GroupPtr construct_group(const std::string& spec);
GroupPtr group_from_table(const std::vector<std::vector<int>>& table,
                          std::vector<std::string> labels = {}, std::string name = "table");
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

/// Validated homomorphism between multiplication-table groups.
struct GroupHom {
    GroupPtr src, dst;
    std::vector<int> map;  // map[g] = image index in dst

    GroupHom() = default;
    GroupHom(GroupPtr s, GroupPtr d, std::vector<int> m, bool validate = true);

    int operator()(int g) const { return map[g]; }
    bool is_injective() const;
    bool is_surjective() const;
    bool is_automorphism() const { return src == dst && is_injective(); }
    bool is_trivial() const;
    static GroupHom identity(const GroupPtr& g);
    GroupHom compose(const GroupHom& inner) const;  // this o inner
    GroupHom inverse() const;                       // requires bijective, src == dst shapes
    bool operator==(const GroupHom& o) const { return map == o.map; }
};

enum class HomFilter { All, Injective, Surjective, Automorphisms };

/// Complete, duplicate-free, lexicographically sorted list of homomorphisms,
/// found by generator-image backtracking.  SizeLimit above |G| = 16 for
/// automorphism-type searches per the documented bound.
std::vector<GroupHom> enumerate_homs(const GroupPtr& g, const GroupPtr& h, HomFilter filter);

/// Aut_c(G) = { v in Aut(G) : v(g)g^{-1} central }, closed under composition.
std::vector<GroupHom> central_automorphisms(const GroupPtr& g);

/// Invariant-factor and prime-power decompositions of an abelian group.
struct AbelianDecomposition {
    GroupPtr group;
    std::vector<int> invariant_factors;        // d_1 | d_2 | ...
    std::vector<int> invariant_generators;     // element indices realizing factors
    std::vector<int> primary_orders;           // p^k list, non-decreasing
    std::vector<int> primary_generators;       // aligned with primary_orders
};

AbelianDecomposition abelian_decomposition(const GroupPtr& a);

/// Character table of a finite abelian group, as root-of-unity exponents.
struct DualGroup {
    GroupPtr group;          // A
    GroupPtr dual;           // abstract group isomorphic to the character group
    int64_t conductor;       // exp(A)
    std::vector<std::vector<RootExp>> table;  // table[chi][a] = chi(a)

    RootExp eval(int chi, int a) const { return table[chi][a]; }
    /// Index of the product character chi*psi in the dual group.
    int mul(int chi, int psi) const { return dual->mul(chi, psi); }
    /// Character index of the pointwise product table, by lookup.
    int index_of(const std::vector<RootExp>& values) const;
};

DualGroup dual_group(const GroupPtr& a);

struct GroupInvariants {
    std::vector<int> center;
    std::vector<int> commutator;
    GroupPtr abelianization;
    std::vector<int> ab_quotient_map;  // G -> abelianization indices
    std::vector<std::vector<int>> conjugacy_classes;
    int exponent;
};

GroupInvariants group_invariants(const GroupPtr& g);

/// All subgroups (element-index sets, sorted), |G| <= 32.
std::vector<std::vector<int>> all_subgroups(const GroupPtr& g);
std::vector<std::vector<int>> normal_abelian_subgroups(const GroupPtr& g);

bool is_normal(const FiniteGroup& g, const std::vector<int>& sub);
bool is_abelian_subset(const FiniteGroup& g, const std::vector<int>& sub);

/// Ordered pairs (H, C) of normal subgroups with trivial intersection,
/// HC = G and C abelian.
std::vector<std::pair<std::vector<int>, std::vector<int>>> direct_factorizations(
    const GroupPtr& g);

/// Subgroup as its own FiniteGroup plus the embedding index map.
struct SubgroupView {
    GroupPtr sub;
    std::vector<int> embed;       // sub index -> ambient index
    std::vector<int> local_of;    // ambient index -> sub index or -1
};

SubgroupView subgroup_view(const GroupPtr& g, const std::vector<int>& elements,
                           const std::string& name);

/// Quotient G / N for normal N, with the projection map.
struct QuotientView {
    GroupPtr quot;
    std::vector<int> proj;  // G -> quot indices
};

QuotientView quotient_group(const GroupPtr& g, const std::vector<int>& normal_sub);

}  // namespace dgd
