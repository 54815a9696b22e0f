#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace dgd {

/// Dense integer matrix (arbitrary precision entries).
class ZMat {
public:
    ZMat() : rows_(0), cols_(0) {}
    ZMat(int64_t rows, int64_t cols) : rows_(rows), cols_(cols), a_(rows * cols, mpz_class(0)) {}
    static ZMat identity(int64_t n);

    int64_t rows() const { return rows_; }
    int64_t cols() const { return cols_; }
    mpz_class& at(int64_t i, int64_t j) { return a_[i * cols_ + j]; }
    const mpz_class& at(int64_t i, int64_t j) const { return a_[i * cols_ + j]; }

    ZMat operator*(const ZMat& o) const;
    bool operator==(const ZMat& o) const = default;

private:
    int64_t rows_, cols_;
    std::vector<mpz_class> a_;
};

/// U * A * V = D with U, V unimodular and D in Smith normal form
/// (diagonal, d_i | d_{i+1}).  Inverse transforms are co-tracked.
struct SmithResult {
    ZMat d, u, v, u_inv, v_inv;
    std::vector<mpz_class> diag;  // nonzero invariant factors, in order
};

SmithResult smith_normal_form(const ZMat& a);

/// Solve A x == b (mod n).  Returns x with entries in [0, n).
std::optional<std::vector<int64_t>> solve_mod(const ZMat& a, const std::vector<int64_t>& b,
                                              int64_t n);

/// The finite abelian group {x in (Z/n)^m : A x == 0 mod n}, presented by
/// independent generators.  Enumerable when the total size is moderate.
struct SolutionGroup {
    int64_t n = 1;                                // modulus
    int64_t m = 0;                                // ambient rank
    std::vector<std::vector<int64_t>> gens;       // each of length m, entries mod n
    std::vector<int64_t> orders;                  // orders[i] > 1, aligned with gens
    mpz_class size() const {
        mpz_class s = 1;
        for (auto o : orders) s *= o;
        return s;
    }
    /// Element for a mixed-radix index vector (one digit per generator).
    std::vector<int64_t> element(const std::vector<int64_t>& digits) const;
};

SolutionGroup kernel_mod(const ZMat& a, int64_t n);

/// Structure of the quotient (subgroup gens) / (subgroup rels) inside (Z/n)^m.
/// rels must be contained in the span of gens.
struct QuotientStructure {
    std::vector<int64_t> invariant_factors;            // > 1, divisibility chain
    std::vector<std::vector<int64_t>> representatives; // lifts to (Z/n)^m of quotient generators
};

QuotientStructure quotient_structure(const SolutionGroup& gens,
                                     const std::vector<std::vector<int64_t>>& rels);

}  // namespace dgd
