#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dgd/error.hpp"

namespace dgd {

using Rat = mpq_class;

/// N-th cyclotomic polynomial as an integer coefficient list, constant term
/// first.  Computed by exact division of x^N - 1 by all Phi_d, d | N, d < N.
std::vector<mpz_class> cyclotomic_poly(int64_t n);

/// Euler totient.
int64_t euler_phi(int64_t n);

class CycNum;

/// A root of unity zeta_N^e in exponent form.  Multiplication is exponent
/// addition mod N.
struct RootExp {
    int64_t conductor = 1;
    int64_t exp = 0;  // reduced to [0, N)

    RootExp() = default;
    RootExp(int64_t n, int64_t e) : conductor(n), exp(((e % n) + n) % n) {}

    RootExp operator*(const RootExp& o) const {
        require_same(o);
        return RootExp(conductor, exp + o.exp);
    }
    RootExp inverse() const { return RootExp(conductor, -exp); }
    RootExp pow(int64_t k) const {
        int64_t e = ((exp * (k % conductor)) % conductor + conductor) % conductor;
        return RootExp(conductor, e);
    }
    bool operator==(const RootExp& o) const = default;
    bool is_one() const { return exp == 0; }

    /// Same root expressed at conductor m (requires conductor | m).
    RootExp lift(int64_t m) const {
        if (m % conductor != 0) throw ConductorMismatch("lift of RootExp to non-multiple conductor");
        return RootExp(m, exp * (m / conductor));
    }
    CycNum embed() const;

    void require_same(const RootExp& o) const {
        if (conductor != o.conductor)
            throw ConductorMismatch("RootExp conductors differ: " + std::to_string(conductor) +
                                    " vs " + std::to_string(o.conductor));
    }
};

/// Exact element of Q(zeta_N), stored as a rational polynomial in zeta_N
/// reduced modulo Phi_N.  The representation is canonical, so operator== is
/// field equality.  Arithmetic requires equal conductors; callers lift first.
class CycNum {
public:
    CycNum() : n_(1), c_(1, Rat(0)) {}
    explicit CycNum(const Rat& r, int64_t conductor = 1) : n_(conductor), c_(euler_phi(conductor), Rat(0)) {
        c_[0] = r;
    }
    CycNum(int64_t num, int64_t conductor) : CycNum(Rat(num), conductor) {}

    /// zeta_N^k.
    static CycNum root(int64_t n, int64_t k);
    static CycNum zero(int64_t n) { return CycNum(Rat(0), n); }
    static CycNum one(int64_t n) { return CycNum(Rat(1), n); }

    int64_t conductor() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rat rational_part() const { return c_[0]; }  // exact iff is_rational()

    CycNum operator+(const CycNum& o) const;
    CycNum operator-(const CycNum& o) const;
    CycNum operator*(const CycNum& o) const;
    CycNum operator-() const;
    CycNum inverse() const;
    CycNum operator/(const CycNum& o) const { return *this * o.inverse(); }
    CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
    CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
    CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

    bool operator==(const CycNum& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const CycNum& o) const { return !(*this == o); }

    /// Same number viewed in Q(zeta_M) for N | M.
    CycNum lift(int64_t m) const;

    /// Exponent k with *this == zeta_N^k, if this is an N-th root of unity.
    std::optional<RootExp> as_root_exp() const;

    /// Complex conjugate (zeta -> zeta^{-1}).
    CycNum conj() const;

    std::string str() const;  // "c0 + c1*z + ... @ N"

private:
    int64_t n_;
    std::vector<Rat> c_;  // length phi(N)

    void require_same(const CycNum& o) const {
        if (n_ != o.n_)
            throw ConductorMismatch("CycNum conductors differ: " + std::to_string(n_) + " vs " +
                                    std::to_string(o.n_));
    }
    friend class ConductorData;
};

/// Lift both operands to the lcm conductor.
void to_common_conductor(CycNum& a, CycNum& b);

inline CycNum RootExp::embed() const { return CycNum::root(conductor, exp); }

}  // namespace dgd
