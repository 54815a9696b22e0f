#pragma once

#include <string>
#include <vector>

#include "dgd/group.hpp"
#include "dgd/linalg.hpp"

namespace dgd {

struct SparseTerm {
    int idx;
    CycNum c;
};
using SparseVec = std::vector<SparseTerm>;

struct CoTerm {
    int left, right;
    CycNum c;
};

enum class HopfKind { GroupAlgebra, FunctionAlgebra, DrinfeldDouble, DrinfeldDoubleDual, Custom };

/// Finite-dimensional Hopf algebra by structure constants over Q(zeta_N).
/// Basis indexing for DG is (x, y) -> x*|G|+y meaning e_x (x) y, for DG*
/// (x, y) -> x*|G|+y meaning x (x) e_y, row-major in element indices.
class HopfData {
public:
    int dim = 0;
    int64_t conductor = 1;
    HopfKind kind = HopfKind::Custom;
    GroupPtr group;  // underlying group for the four built kinds
    std::vector<std::string> labels;
    std::vector<SparseVec> mul;             // mul[i*dim+j]
    std::vector<CycNum> unit;               // coordinates of 1
    std::vector<std::vector<CoTerm>> comul; // comul[i]
    std::vector<CycNum> counit;             // counit[i] = eps(e_i)
    std::vector<SparseVec> antipode;        // antipode[i] = S(e_i)

    const SparseVec& product(int i, int j) const { return mul[i * dim + j]; }

    std::vector<CycNum> mul_vec(const std::vector<CycNum>& a, const std::vector<CycNum>& b) const;
    CycNum counit_of(const std::vector<CycNum>& a) const;
    /// Inverse in the algebra, by linear solve; throws NotInvertible.
    std::vector<CycNum> invert_element(const std::vector<CycNum>& a) const;
    bool is_invertible(const std::vector<CycNum>& a) const;

    int pair_index(int x, int y) const { return x * (int)group->order() + y; }
};

HopfData build_hopf(HopfKind kind, const GroupPtr& g, int64_t conductor);

struct AxiomResult {
    std::string axiom;
    bool pass;
    std::vector<int> witness;  // offending basis indices, empty on pass
};

struct AxiomReport {
    std::vector<AxiomResult> results;
    bool all_pass() const {
        for (auto& r : results)
            if (!r.pass) return false;
        return true;
    }
};

AxiomReport verify_axioms(const HopfData& h);

/// Linear map between (the underlying spaces of) two Hopf algebras.
struct LinMap {
    const HopfData* src = nullptr;
    const HopfData* dst = nullptr;
    Mat mat;  // dst.dim x src.dim

    LinMap() = default;
    LinMap(const HopfData* s, const HopfData* d)
        : src(s), dst(d), mat(d->dim, s->dim, d->conductor) {}

    std::vector<CycNum> apply(const std::vector<CycNum>& v) const { return mat.apply(v); }
    std::vector<CycNum> apply_basis(int i) const;
    LinMap compose(const LinMap& inner) const;  // this o inner
    bool operator==(const LinMap& o) const { return mat == o.mat; }
};

/// Convolution (f*g)(x) = f(x_1) g(x_2) through comul of the shared source and
/// mul of the shared destination.
LinMap convolve(const LinMap& f, const LinMap& g);
/// Convolution unit: unit_dst o counit_src.
LinMap convolution_unit(const HopfData* src, const HopfData* dst);

/// 1-cochain utilities: values[i] = f(basis_i).
std::vector<CycNum> conv1(const HopfData& h, const std::vector<CycNum>& f,
                          const std::vector<CycNum>& g);
/// Convolution inverse of a 1-cochain, by linear solve; throws NotInvertible.
std::vector<CycNum> conv1_inverse(const HopfData& h, const std::vector<CycNum>& f);

/// Twisted comodule algebra _sigma H: multiplication a ._s b = s(a1,b1) a2 b2,
/// comodule structure unchanged.  sigma is a dim x dim value table.
struct TwistedAlgebra {
    const HopfData* host;
    std::vector<SparseVec> mul;
    std::vector<CycNum> unit;
    bool associative() const;
};

TwistedAlgebra twist_algebra(const HopfData& h, const Mat& sigma);

/// Doi twist _s H _{s^-1}: only the multiplication changes; caller supplies
/// the convolution inverse table.
HopfData doi_twist(const HopfData& h, const Mat& sigma, const Mat& sigma_inv);

/// The exact-sequence maps kG <-p- DG* <-iota- k^G with splitting s and
/// algebra map t.
struct CanonicalMaps {
    LinMap iota;  // k^G -> DG*
    LinMap p;     // DG* -> kG
    LinMap s;     // DG* -> k^G
    LinMap t;     // kG -> DG*
};

CanonicalMaps canonical_maps(const HopfData& kg, const HopfData& kdual, const HopfData& dgstar);

/// Sparse element helpers.
std::vector<CycNum> basis_vector(const HopfData& h, int i);

/// Triple coproduct terms (Delta (x) id) Delta, used by Doi twists.
struct CoTerm3 {
    int a, b, c;
    CycNum coeff;
};
std::vector<CoTerm3> double_comul(const HopfData& h, int i);

}  // namespace dgd
