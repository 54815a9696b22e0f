#include "dgd/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace dgd {

int64_t euler_phi(int64_t n) {
    int64_t result = n, m = n;
    for (int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

// Exact division of integer polynomials, quotient assumed integral.
std::vector<mpz_class> poly_div_exact(const std::vector<mpz_class>& num,
                                      const std::vector<mpz_class>& den) {
    std::vector<mpz_class> rem = num;
    std::vector<mpz_class> quot(num.size() - den.size() + 1, mpz_class(0));
    for (int64_t i = (int64_t)quot.size() - 1; i >= 0; --i) {
        mpz_class q = rem[i + den.size() - 1] / den.back();
        quot[i] = q;
        if (q != 0)
            for (size_t j = 0; j < den.size(); ++j) rem[i + j] -= q * den[j];
    }
    for (auto& r : rem)
        if (r != 0) throw InternalError("non-exact polynomial division");
    return quot;
}

}  // namespace

std::vector<mpz_class> cyclotomic_poly(int64_t n) {
    if (n < 1) throw ParseError("cyclotomic_poly requires N >= 1");
    static std::map<int64_t, std::vector<mpz_class>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // x^n - 1
    std::vector<mpz_class> num(n + 1, mpz_class(0));
    num[0] = -1;
    num[n] = 1;
    for (int64_t d = 1; d < n; ++d)
        if (n % d == 0) num = poly_div_exact(num, cyclotomic_poly(d));
    std::lock_guard<std::mutex> lk(mu);
    cache[n] = num;
    return num;
}

// Per-conductor reduction data: x^k mod Phi_N for k in [phi, 2*phi-1).
class ConductorData {
public:
    static const ConductorData& get(int64_t n) {
        static std::map<int64_t, ConductorData*> cache;
        static std::mutex mu;
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it == cache.end()) it = cache.emplace(n, new ConductorData(n)).first;
        return *it->second;
    }

    int64_t phi;
    std::vector<Rat> poly;                    // Phi_N coefficients (monic, length phi+1)
    std::vector<std::vector<Rat>> high_pows;  // high_pows[j] = x^{phi+j} mod Phi_N

private:
    explicit ConductorData(int64_t n) {
        auto zp = cyclotomic_poly(n);
        phi = (int64_t)zp.size() - 1;
        poly.reserve(zp.size());
        for (auto& z : zp) poly.emplace_back(z);
        // x^phi = -(poly[0] + ... + poly[phi-1] x^{phi-1}); iterate upward.
        std::vector<Rat> cur(phi, Rat(0));
        for (int64_t i = 0; i < phi; ++i) cur[i] = -poly[i];
        high_pows.push_back(cur);
        for (int64_t j = 1; j < phi - 1; ++j) {
            std::vector<Rat> nxt(phi, Rat(0));
            // multiply cur by x
            Rat top = cur[phi - 1];
            for (int64_t i = phi - 1; i > 0; --i) nxt[i] = cur[i - 1];
            nxt[0] = 0;
            if (top != 0)
                for (int64_t i = 0; i < phi; ++i) nxt[i] += top * high_pows[0][i];
            high_pows.push_back(nxt);
            cur = nxt;
        }
    }
};

CycNum CycNum::root(int64_t n, int64_t k) {
    k = ((k % n) + n) % n;
    const auto& cd = ConductorData::get(n);
    CycNum z = CycNum::zero(n);
    if ((int64_t)k < cd.phi) {
        z.c_[k] = 1;
        return z;
    }
    // x^k for k >= phi: repeated reduction; k < n <= bounded, walk down.
    std::vector<Rat> acc(cd.phi, Rat(0));
    acc[0] = 1;
    // multiply by x, k times, reducing on overflow
    for (int64_t step = 0; step < k; ++step) {
        Rat top = acc[cd.phi - 1];
        for (int64_t i = cd.phi - 1; i > 0; --i) acc[i] = acc[i - 1];
        acc[0] = 0;
        if (top != 0)
            for (int64_t i = 0; i < cd.phi; ++i) acc[i] += top * cd.high_pows[0][i];
    }
    z.c_ = acc;
    return z;
}

bool CycNum::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycNum::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

CycNum CycNum::operator+(const CycNum& o) const {
    require_same(o);
    CycNum r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

CycNum CycNum::operator-(const CycNum& o) const {
    require_same(o);
    CycNum r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

CycNum CycNum::operator-() const {
    CycNum r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycNum CycNum::operator*(const CycNum& o) const {
    require_same(o);
    const auto& cd = ConductorData::get(n_);
    int64_t phi = cd.phi;
    CycNum r = CycNum::zero(n_);
    if (phi == 1) {
        r.c_[0] = c_[0] * o.c_[0];
        return r;
    }
    std::vector<Rat> prod(2 * phi - 1, Rat(0));
    for (int64_t i = 0; i < phi; ++i) {
        if (c_[i] == 0) continue;
        for (int64_t j = 0; j < phi; ++j) {
            if (o.c_[j] == 0) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    for (int64_t i = 0; i < phi; ++i) r.c_[i] = prod[i];
    for (int64_t j = 0; j < phi - 1; ++j) {
        const Rat& hc = prod[phi + j];
        if (hc == 0) continue;
        const auto& row = cd.high_pows[j];
        for (int64_t i = 0; i < phi; ++i) r.c_[i] += hc * row[i];
    }
    return r;
}

// Extended Euclid in Q[x] against Phi_N.
CycNum CycNum::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic number");
    if (is_rational()) {
        CycNum r = CycNum::zero(n_);
        r.c_[0] = Rat(1) / c_[0];
        return r;
    }
    const auto& cd = ConductorData::get(n_);
    using Poly = std::vector<Rat>;
    auto deg = [](const Poly& p) -> int64_t {
        for (int64_t i = (int64_t)p.size() - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return -1;
    };
    Poly r0 = cd.poly;  // Phi_N
    Poly r1(c_.begin(), c_.end());
    Poly s0(1, Rat(0)), s1(1, Rat(1));  // coefficients of the *this-side combination
    while (deg(r1) > 0) {
        // divide r0 by r1
        Poly q(std::max<int64_t>(deg(r0) - deg(r1) + 1, 1), Rat(0));
        Poly rem = r0;
        int64_t d1 = deg(r1);
        Rat lead = r1[d1];
        for (int64_t i = deg(rem); i >= d1; --i) {
            if (rem[i] == 0) continue;
            Rat f = rem[i] / lead;
            q[i - d1] = f;
            for (int64_t j = 0; j <= d1; ++j) rem[i - d1 + j] -= f * r1[j];
        }
        // s_new = s0 - q * s1
        Poly snew(std::max(s0.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < s0.size(); ++i) snew[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
        }
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = snew;
    }
    int64_t d = deg(r1);
    if (d != 0) throw DivisionByZero("element not invertible mod Phi_N");
    Rat scale = Rat(1) / r1[0];
    CycNum out = CycNum::zero(n_);
    // reduce s1 * scale mod Phi_N (degree can exceed phi-1)
    std::vector<Rat> acc(s1.size(), Rat(0));
    for (size_t i = 0; i < s1.size(); ++i) acc[i] = s1[i] * scale;
    // fold down high powers
    for (int64_t i = (int64_t)acc.size() - 1; i >= cd.phi; --i) {
        Rat hc = acc[i];
        if (hc == 0) continue;
        acc[i] = 0;
        int64_t j = i - cd.phi;
        if (j < (int64_t)cd.high_pows.size()) {
            for (int64_t k = 0; k < cd.phi; ++k) acc[j + 0 + k] += hc * cd.high_pows[j][k];
        } else {
            // shift down one power at a time (rare)
            acc[i - 1] += 0;  // no-op, handled by explicit loop below
            std::vector<Rat> tmp(cd.phi, Rat(0));
            tmp = cd.high_pows.back();
            // x^{i} = x^{i - (2*phi-2)} * x^{2*phi-2}; simple loop:
            // multiply x^{phi + (hp-1)} by x until reaching i
            int64_t cur_pow = cd.phi + (int64_t)cd.high_pows.size() - 1;
            while (cur_pow < i) {
                Rat top = tmp[cd.phi - 1];
                for (int64_t k = cd.phi - 1; k > 0; --k) tmp[k] = tmp[k - 1];
                tmp[0] = 0;
                if (top != 0)
                    for (int64_t k = 0; k < cd.phi; ++k) tmp[k] += top * cd.high_pows[0][k];
                ++cur_pow;
            }
            for (int64_t k = 0; k < cd.phi; ++k) acc[k] += hc * tmp[k];
        }
    }
    for (int64_t i = 0; i < cd.phi && i < (int64_t)acc.size(); ++i) out.c_[i] = acc[i];
    return out;
}

CycNum CycNum::lift(int64_t m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw ConductorMismatch("lift target must be a multiple of the conductor");
    int64_t k = m / n_;
    CycNum out = CycNum::zero(m);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        CycNum t = CycNum::root(m, (int64_t)i * k);
        for (size_t j = 0; j < out.c_.size(); ++j) out.c_[j] += c_[i] * t.coeffs()[j];
    }
    return out;
}

std::optional<RootExp> CycNum::as_root_exp() const {
    for (int64_t k = 0; k < n_; ++k)
        if (*this == CycNum::root(n_, k)) return RootExp(n_, k);
    return std::nullopt;
}

CycNum CycNum::conj() const {
    CycNum out = CycNum::zero(n_);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        CycNum t = CycNum::root(n_, -(int64_t)i);
        for (size_t j = 0; j < out.c_.size(); ++j) out.c_[j] += c_[i] * t.coeffs()[j];
    }
    return out;
}

std::string CycNum::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i];
        if (i == 1) os << "*z";
        if (i > 1) os << "*z^" << i;
        first = false;
    }
    if (first) os << "0";
    os << " @ " << n_;
    return os.str();
}

void to_common_conductor(CycNum& a, CycNum& b) {
    int64_t m = std::lcm(a.conductor(), b.conductor());
    if (a.conductor() != m) a = a.lift(m);
    if (b.conductor() != m) b = b.lift(m);
}

}  // namespace dgd
