#include "dgd/snf.hpp"

#include <algorithm>

#include "dgd/error.hpp"

namespace dgd {

ZMat ZMat::identity(int64_t n) {
    ZMat m(n, n);
    for (int64_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

ZMat ZMat::operator*(const ZMat& o) const {
    ZMat r(rows_, o.cols_);
    for (int64_t i = 0; i < rows_; ++i)
        for (int64_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (int64_t j = 0; j < o.cols_; ++j)
                if (o.at(k, j) != 0) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

namespace {

struct Worker {
    ZMat a, u, v, ui, vi;

    explicit Worker(const ZMat& m)
        : a(m),
          u(ZMat::identity(m.rows())),
          v(ZMat::identity(m.cols())),
          ui(ZMat::identity(m.rows())),
          vi(ZMat::identity(m.cols())) {}

    // row_i += f * row_j on A and U; inverse op on UI columns.
    void row_add(int64_t i, int64_t j, const mpz_class& f) {
        for (int64_t c = 0; c < a.cols(); ++c) a.at(i, c) += f * a.at(j, c);
        for (int64_t c = 0; c < u.cols(); ++c) u.at(i, c) += f * u.at(j, c);
        for (int64_t r = 0; r < ui.rows(); ++r) ui.at(r, j) -= f * ui.at(r, i);
    }
    void col_add(int64_t i, int64_t j, const mpz_class& f) {  // col_i += f*col_j
        for (int64_t r = 0; r < a.rows(); ++r) a.at(r, i) += f * a.at(r, j);
        for (int64_t r = 0; r < v.rows(); ++r) v.at(r, i) += f * v.at(r, j);
        for (int64_t c = 0; c < vi.cols(); ++c) vi.at(j, c) -= f * vi.at(i, c);
    }
    void row_swap(int64_t i, int64_t j) {
        if (i == j) return;
        for (int64_t c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
        for (int64_t c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
        for (int64_t r = 0; r < ui.rows(); ++r) std::swap(ui.at(r, i), ui.at(r, j));
    }
    void col_swap(int64_t i, int64_t j) {
        if (i == j) return;
        for (int64_t r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
        for (int64_t r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
        for (int64_t c = 0; c < vi.cols(); ++c) std::swap(vi.at(i, c), vi.at(j, c));
    }
    void row_negate(int64_t i) {
        for (int64_t c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
        for (int64_t c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
        for (int64_t r = 0; r < ui.rows(); ++r) ui.at(r, i) = -ui.at(r, i);
    }
};

}  // namespace

SmithResult smith_normal_form(const ZMat& m) {
    Worker w(m);
    int64_t t = 0;
    int64_t nmin = std::min(m.rows(), m.cols());
    while (t < nmin) {
        // locate smallest nonzero |entry| in the trailing block
        int64_t pi = -1, pj = -1;
        for (int64_t i = t; i < m.rows(); ++i)
            for (int64_t j = t; j < m.cols(); ++j) {
                if (w.a.at(i, j) == 0) continue;
                if (pi < 0 || cmp(abs(w.a.at(i, j)), abs(w.a.at(pi, pj))) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        if (w.a.at(t, t) < 0) w.row_negate(t);
        bool clean = true;
        for (int64_t i = t + 1; i < m.rows(); ++i) {
            if (w.a.at(i, t) == 0) continue;
            mpz_class q = w.a.at(i, t) / w.a.at(t, t);
            // floor toward smaller remainder
            w.row_add(i, t, -q);
            if (w.a.at(i, t) != 0) clean = false;
        }
        for (int64_t j = t + 1; j < m.cols(); ++j) {
            if (w.a.at(t, j) == 0) continue;
            mpz_class q = w.a.at(t, j) / w.a.at(t, t);
            w.col_add(j, t, -q);
            if (w.a.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // pivot again with smaller entries present
        // ensure pivot divides the remaining block
        bool divides = true;
        for (int64_t i = t + 1; i < m.rows() && divides; ++i)
            for (int64_t j = t + 1; j < m.cols() && divides; ++j)
                if (w.a.at(i, j) % w.a.at(t, t) != 0) {
                    w.row_add(t, i, 1);  // pull the offending row up, re-run
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }
    SmithResult res;
    res.d = w.a;
    res.u = w.u;
    res.v = w.v;
    res.u_inv = w.ui;
    res.v_inv = w.vi;
    for (int64_t i = 0; i < nmin; ++i)
        if (res.d.at(i, i) != 0) res.diag.push_back(res.d.at(i, i));
    return res;
}

namespace {

int64_t mod_pos(const mpz_class& x, int64_t n) {
    mpz_class r = x % n;
    if (r < 0) r += n;
    return r.get_si();
}

}  // namespace

std::optional<std::vector<int64_t>> solve_mod(const ZMat& a, const std::vector<int64_t>& b,
                                              int64_t n) {
    auto s = smith_normal_form(a);
    int64_t rank = (int64_t)s.diag.size();
    // rhs in transformed coordinates
    std::vector<mpz_class> ub(a.rows(), mpz_class(0));
    for (int64_t i = 0; i < a.rows(); ++i)
        for (int64_t j = 0; j < a.rows(); ++j)
            if (s.u.at(i, j) != 0) ub[i] += s.u.at(i, j) * b[j];
    std::vector<mpz_class> y(a.cols(), mpz_class(0));
    for (int64_t i = 0; i < a.rows(); ++i) {
        mpz_class c = ub[i] % n;
        if (c < 0) c += n;
        if (i >= rank || i >= a.cols()) {
            if (c != 0) return std::nullopt;
            continue;
        }
        mpz_class d = s.d.at(i, i) % n;
        if (d < 0) d += n;
        // solve d*y == c mod n
        mpz_class g;
        mpz_class dd = d == 0 ? mpz_class(n) : d;
        mpz_gcd(g.get_mpz_t(), dd.get_mpz_t(), mpz_class(n).get_mpz_t());
        if (c % g != 0) return std::nullopt;
        mpz_class n1 = n / g, d1 = dd / g, c1 = c / g, inv;
        if (n1 == 1) {
            y[i] = 0;
        } else {
            if (mpz_invert(inv.get_mpz_t(), d1.get_mpz_t(), n1.get_mpz_t()) == 0)
                return std::nullopt;
            y[i] = (c1 * inv) % n1;
        }
    }
    std::vector<int64_t> x(a.cols(), 0);
    for (int64_t i = 0; i < a.cols(); ++i) {
        mpz_class acc = 0;
        for (int64_t j = 0; j < a.cols(); ++j)
            if (s.v.at(i, j) != 0) acc += s.v.at(i, j) * y[j];
        x[i] = mod_pos(acc, n);
    }
    return x;
}

std::vector<int64_t> SolutionGroup::element(const std::vector<int64_t>& digits) const {
    std::vector<int64_t> x(m, 0);
    for (size_t k = 0; k < gens.size(); ++k) {
        int64_t d = digits[k] % orders[k];
        if (d == 0) continue;
        for (int64_t i = 0; i < m; ++i) x[i] = (x[i] + d * gens[k][i]) % n;
    }
    return x;
}

SolutionGroup kernel_mod(const ZMat& a, int64_t n) {
    auto s = smith_normal_form(a);
    int64_t rank = (int64_t)s.diag.size();
    SolutionGroup g;
    g.n = n;
    g.m = a.cols();
    for (int64_t i = 0; i < a.cols(); ++i) {
        mpz_class d = i < rank ? s.diag[i] : mpz_class(0);
        mpz_class gg;
        mpz_class dd = d == 0 ? mpz_class(n) : d;
        mpz_gcd(gg.get_mpz_t(), dd.get_mpz_t(), mpz_class(n).get_mpz_t());
        int64_t ord = gg.get_si();  // order of the generator
        if (ord <= 1) continue;
        int64_t step = n / ord;
        std::vector<int64_t> gen(a.cols(), 0);
        for (int64_t r = 0; r < a.cols(); ++r) gen[r] = mod_pos(s.v.at(r, i) * step, n);
        g.gens.push_back(std::move(gen));
        g.orders.push_back(ord);
    }
    return g;
}

QuotientStructure quotient_structure(const SolutionGroup& k,
                                     const std::vector<std::vector<int64_t>>& rels) {
    int64_t ng = (int64_t)k.gens.size();
    QuotientStructure out;
    if (ng == 0) return out;
    // express each relation in generator coordinates: solve G c == rel (mod n)
    ZMat gmat(k.m, ng);
    for (int64_t i = 0; i < k.m; ++i)
        for (int64_t j = 0; j < ng; ++j) gmat.at(i, j) = k.gens[j][i];
    std::vector<std::vector<int64_t>> coords;
    for (const auto& rel : rels) {
        auto c = solve_mod(gmat, rel, k.n);
        if (!c) throw InternalError("relation not inside the generated subgroup");
        coords.push_back(*c);
    }
    // presentation: Z^ng / < orders, relation coords >
    ZMat rmat(ng, ng + (int64_t)coords.size());
    for (int64_t i = 0; i < ng; ++i) rmat.at(i, i) = k.orders[i];
    for (size_t r = 0; r < coords.size(); ++r)
        for (int64_t i = 0; i < ng; ++i) rmat.at(i, ng + (int64_t)r) = coords[r][i];
    auto s = smith_normal_form(rmat);
    // quotient generators: columns of U^{-1}; orders: diag (0 cannot occur:
    // order rows make the quotient finite)
    for (int64_t i = 0; i < ng; ++i) {
        mpz_class d = s.d.at(i, i);
        if (d == 0) throw InternalError("infinite quotient in quotient_structure");
        if (d == 1) continue;
        out.invariant_factors.push_back(d.get_si());
        std::vector<int64_t> rep(k.m, 0);
        for (int64_t j = 0; j < ng; ++j) {
            int64_t c = mod_pos(s.u_inv.at(j, i), k.n);
            if (c == 0) continue;
            for (int64_t t = 0; t < k.m; ++t) rep[t] = (rep[t] + c * k.gens[j][t]) % k.n;
        }
        out.representatives.push_back(std::move(rep));
    }
    return out;
}

}  // namespace dgd
