#include "dgd/cohomology.hpp"

#include <algorithm>
#include <set>

namespace dgd {

BarComplexSlice bar_complex(const GroupPtr& g, int64_t n) {
    if (g->order() > 16) throw SizeLimit("bar complex supported for |G| <= 16");
    BarComplexSlice b;
    b.group = g;
    b.n = n;
    int m = g->order() - 1;
    b.m1 = m;
    b.m2 = m * m;
    b.m3 = m * m * m;
    b.d1 = ZMat(b.m2, b.m1);
    b.d2 = ZMat(b.m3, b.m2);
    // d1(nu)(g,h) = nu(g) + nu(h) - nu(gh)   (normalized: nu(1) = 0)
    for (int gg = 1; gg <= m; ++gg)
        for (int h = 1; h <= m; ++h) {
            int row = b.idx2(gg, h);
            b.d1.at(row, b.idx1(gg)) += 1;
            b.d1.at(row, b.idx1(h)) += 1;
            int p = g->mul(gg, h);
            if (p != 0) b.d1.at(row, b.idx1(p)) -= 1;
        }
    // d2(beta)(g,h,k) = beta(h,k) - beta(gh,k) + beta(g,hk) - beta(g,h)
    auto idx3 = [m](int a, int bb, int c) { return ((a - 1) * m + (bb - 1)) * m + (c - 1); };
    auto add2 = [&](int row, int a, int bb, int v) {
        if (a == 0 || bb == 0) return;  // normalized cochains vanish at identity
        b.d2.at(row, b.idx2(a, bb)) += v;
    };
    for (int a = 1; a <= m; ++a)
        for (int bb = 1; bb <= m; ++bb)
            for (int c = 1; c <= m; ++c) {
                int row = idx3(a, bb, c);
                add2(row, bb, c, 1);
                add2(row, g->mul(a, bb), c, -1);
                add2(row, a, g->mul(bb, c), 1);
                add2(row, a, bb, -1);
            }
    return b;
}

bool GroupCocycleExp::is_cocycle() const {
    int m = group->order();
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                int64_t lhs = table[a][b] + table[group->mul(a, b)][c];
                int64_t rhs = table[b][c] + table[a][group->mul(b, c)];
                if (((lhs - rhs) % n + n) % n != 0) return false;
            }
    for (int a = 0; a < m; ++a)
        if (table[a][0] != 0 || table[0][a] != 0) return false;
    return true;
}

bool GroupCocycleExp::is_invariant() const {
    int m = group->order();
    for (int t = 0; t < m; ++t)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (table[a][b] != table[group->conj(a, t)][group->conj(b, t)]) return false;
    return true;
}

GroupCocycleExp GroupCocycleExp::mul(const GroupCocycleExp& o) const {
    if (n != o.n || group.get() != o.group.get()) throw ShapeMismatch("cocycle multiply");
    GroupCocycleExp r = *this;
    for (size_t i = 0; i < table.size(); ++i)
        for (size_t j = 0; j < table.size(); ++j) r.table[i][j] = (table[i][j] + o.table[i][j]) % n;
    return r;
}

GroupCocycleExp GroupCocycleExp::inverse_table() const {
    GroupCocycleExp r = *this;
    for (auto& row : r.table)
        for (auto& v : row) v = (n - v) % n;
    return r;
}

GroupCocycleExp GroupCocycleExp::lift(int64_t m) const {
    if (m % n != 0) throw ConductorMismatch("cocycle lift");
    GroupCocycleExp r = *this;
    r.n = m;
    int64_t k = m / n;
    for (auto& row : r.table)
        for (auto& v : row) v *= k;
    return r;
}

bool GroupCocycleExp::is_trivial_table() const {
    for (auto& row : table)
        for (auto v : row)
            if (v % n != 0) return false;
    return true;
}

GroupCocycleExp trivial_group_cocycle(const GroupPtr& g, int64_t n) {
    GroupCocycleExp b;
    b.group = g;
    b.n = n;
    b.table.assign(g->order(), std::vector<int64_t>(g->order(), 0));
    return b;
}

GroupCocycleExp coboundary_of(const GroupPtr& g, int64_t n, const std::vector<int64_t>& nu) {
    GroupCocycleExp b = trivial_group_cocycle(g, n);
    for (int x = 0; x < g->order(); ++x)
        for (int y = 0; y < g->order(); ++y) {
            int64_t v = nu[x] + nu[y] - nu[g->mul(x, y)];
            b.table[x][y] = ((v % n) + n) % n;
        }
    return b;
}

namespace {

GroupCocycleExp rep_from_c2(const GroupPtr& g, int64_t n, const std::vector<int64_t>& x) {
    GroupCocycleExp b = trivial_group_cocycle(g, n);
    int m = g->order() - 1;
    for (int a = 1; a <= m; ++a)
        for (int bb = 1; bb <= m; ++bb) b.table[a][bb] = ((x[(a - 1) * m + (bb - 1)] % n) + n) % n;
    return b;
}

// rows expressing conjugation invariance x_{(g,h)} - x_{(g^t,h^t)} == 0
void append_invariance_rows(const BarComplexSlice& bc, std::vector<std::vector<int64_t>>& rows) {
    auto g = bc.group;
    int m = g->order() - 1;
    for (int t = 1; t < g->order(); ++t)
        for (int a = 1; a <= m; ++a)
            for (int bb = 1; bb <= m; ++bb) {
                int ca = g->conj(a, t), cb = g->conj(bb, t);
                if (ca == a && cb == bb) continue;
                std::vector<int64_t> row(bc.m2, 0);
                row[bc.idx2(a, bb)] += 1;
                row[bc.idx2(ca, cb)] -= 1;
                rows.push_back(std::move(row));
            }
}

}  // namespace

SolutionGroup z2_group(const GroupPtr& g, int64_t n, bool invariant) {
    auto bc = bar_complex(g, n);
    std::vector<std::vector<int64_t>> extra;
    if (invariant) append_invariance_rows(bc, extra);
    ZMat a(bc.m3 + (int64_t)extra.size(), bc.m2);
    for (int i = 0; i < bc.m3; ++i)
        for (int j = 0; j < bc.m2; ++j) a.at(i, j) = bc.d2.at(i, j);
    for (size_t r = 0; r < extra.size(); ++r)
        for (int j = 0; j < bc.m2; ++j) a.at(bc.m3 + (int64_t)r, j) = extra[r][j];
    return kernel_mod(a, n);
}

GroupCocycleExp cocycle_from_coords(const GroupPtr& g, int64_t n, const std::vector<int64_t>& x) {
    return rep_from_c2(g, n, x);
}

H2Result h2(const GroupPtr& g, int64_t n, bool invariant) {
    auto bc = bar_complex(g, n);
    auto kern = z2_group(g, n, invariant);
    // coboundary generators: images of 1-cochain basis vectors (invariant:
    // only class-function 1-cochains)
    std::vector<std::vector<int64_t>> img;
    std::vector<std::vector<int64_t>> c1basis;
    if (!invariant) {
        for (int i = 0; i < bc.m1; ++i) {
            std::vector<int64_t> e(bc.m1, 0);
            e[i] = 1;
            c1basis.push_back(std::move(e));
        }
    } else {
        std::set<int> seen;
        for (int a = 1; a < g->order(); ++a) {
            if (seen.count(a)) continue;
            std::vector<int64_t> e(bc.m1, 0);
            for (int t = 0; t < g->order(); ++t) {
                int c = g->conj(a, t);
                seen.insert(c);
                e[bc.idx1(c)] = 1;
            }
            c1basis.push_back(std::move(e));
        }
    }
    for (auto& e : c1basis) {
        std::vector<int64_t> v(bc.m2, 0);
        for (int r = 0; r < bc.m2; ++r) {
            mpz_class acc = 0;
            for (int c = 0; c < bc.m1; ++c)
                if (e[c]) acc += bc.d1.at(r, c) * e[c];
            acc %= n;
            if (acc < 0) acc += n;
            v[r] = acc.get_si();
        }
        img.push_back(std::move(v));
    }
    auto q = quotient_structure(kern, img);
    H2Result res;
    res.invariant_factors = q.invariant_factors;
    for (auto& rep : q.representatives) res.representatives.push_back(rep_from_c2(g, n, rep));
    // stable part: image of H^2(G, mu_N) -> H^2(G, mu_{N |G|})
    int64_t big = n * g->order();
    std::vector<int64_t> stable;
    for (size_t i = 0; i < res.representatives.size(); ++i) {
        auto lifted = res.representatives[i].lift(big);
        // order of the lifted class: smallest k | d_i with beta^k a coboundary
        int64_t d = res.invariant_factors[i];
        int64_t ord = 1;
        for (int64_t k = 1; k <= d; ++k) {
            if (d % k != 0) continue;
            // beta^k trivial in H^2(G, mu_big)?
            GroupCocycleExp pow = trivial_group_cocycle(g, big);
            for (int64_t rep = 0; rep < k; ++rep) pow = pow.mul(lifted);
            if (solve_group_coboundary(pow, {big}).has_value()) {
                ord = k;
                break;
            }
        }
        if (ord > 1) stable.push_back(ord);
    }
    std::sort(stable.begin(), stable.end());
    res.stable_invariant_factors = stable;
    return res;
}

std::optional<CoboundarySolution> solve_group_coboundary(const GroupCocycleExp& beta,
                                                         const std::vector<int64_t>& schedule,
                                                         bool invariant_witness) {
    for (int64_t m : schedule) {
        if (m % beta.n != 0) continue;
        auto lifted = beta.lift(m);
        auto bc = bar_complex(beta.group, m);
        // target vector in C^2 coordinates
        std::vector<int64_t> b(bc.m2, 0);
        for (int a = 1; a < beta.group->order(); ++a)
            for (int h = 1; h < beta.group->order(); ++h) b[bc.idx2(a, h)] = lifted.table[a][h];
        ZMat a = bc.d1;
        if (invariant_witness) {
            // restrict to class-function 1-cochains: add rows nu(g) - nu(g^t) = 0
            std::vector<std::vector<int64_t>> rows;
            for (int t = 1; t < beta.group->order(); ++t)
                for (int x = 1; x < beta.group->order(); ++x) {
                    int c = beta.group->conj(x, t);
                    if (c == x) continue;
                    std::vector<int64_t> row(bc.m1, 0);
                    row[bc.idx1(x)] += 1;
                    row[bc.idx1(c)] -= 1;
                    rows.push_back(std::move(row));
                }
            ZMat big(a.rows() + (int64_t)rows.size(), a.cols());
            for (int64_t i = 0; i < a.rows(); ++i)
                for (int64_t j = 0; j < a.cols(); ++j) big.at(i, j) = a.at(i, j);
            for (size_t r = 0; r < rows.size(); ++r)
                for (int64_t j = 0; j < a.cols(); ++j)
                    big.at(a.rows() + (int64_t)r, j) = rows[r][j];
            b.resize(bc.m2 + rows.size(), 0);
            a = big;
        }
        auto x = solve_mod(a, b, m);
        if (x) {
            CoboundarySolution sol;
            sol.conductor = m;
            sol.nu.assign(beta.group->order(), 0);
            for (int g = 1; g < beta.group->order(); ++g) sol.nu[g] = (*x)[bc.idx1(g)];
            return sol;
        }
    }
    return std::nullopt;
}

std::vector<PairingHom> pairings(const GroupPtr& g, PairingKind kind) {
    std::vector<PairingHom> out;
    auto z = g->center();
    std::vector<bool> central(g->order(), false);
    for (int c : z) central[c] = true;
    for (auto& f : enumerate_homs(g, g, HomFilter::All)) {
        bool conj_inv = true;
        for (int t = 0; t < g->order() && conj_inv; ++t)
            for (int x = 0; x < g->order() && conj_inv; ++x)
                conj_inv = f.map[g->conj(x, t)] == f.map[x];
        bool is_central = true;
        for (int x = 0; x < g->order() && is_central; ++x) is_central = central[f.map[x]];
        if (kind == PairingKind::Lazy && conj_inv) out.push_back({f, is_central});
        if (kind == PairingKind::Central && is_central) {
            // Hom(G, Z(G)); conjugation invariance is then automatic:
            // f(g^t) = f(g)^t = f(g) for central values... only when f kills
            // commutators, which Hom(G, Z) does.
            out.push_back({f, true});
        }
    }
    return out;
}

}  // namespace dgd
