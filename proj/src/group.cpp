#include "dgd/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "dgd/snf.hpp"

namespace dgd {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> labels,
                         std::string name)
    : n_((int)table.size()), labels_(std::move(labels)), name_(std::move(name)) {
    if (n_ == 0) throw TableInvalid("empty table");
    mul_.resize(n_ * n_);
    for (int i = 0; i < n_; ++i) {
        if ((int)table[i].size() != n_) throw TableInvalid("non-square table");
        for (int j = 0; j < n_; ++j) {
            int v = table[i][j];
            if (v < 0 || v >= n_) throw TableInvalid("entry out of range");
            mul_[i * n_ + j] = v;
        }
    }
    for (int i = 0; i < n_; ++i)
        if (mul(0, i) != i || mul(i, 0) != i)
            throw TableInvalid("index 0 is not a two-sided identity");
    inv_.assign(n_, -1);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j)
            if (mul(i, j) == 0 && mul(j, i) == 0) {
                inv_[i] = j;
                break;
            }
        if (inv_[i] < 0) throw TableInvalid("missing inverse for element " + std::to_string(i));
    }
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw TableInvalid("associativity fails at (" + std::to_string(a) + "," +
                                       std::to_string(b) + "," + std::to_string(c) + ")");
    if (labels_.empty()) {
        labels_.resize(n_);
        for (int i = 0; i < n_; ++i) labels_[i] = "g" + std::to_string(i);
    }
    elt_order_.assign(n_, 1);
    exponent_ = 1;
    for (int i = 0; i < n_; ++i) {
        int o = 1, x = i;
        while (x != 0) {
            x = mul(x, i);
            ++o;
        }
        elt_order_[i] = o;
        exponent_ = std::lcm(exponent_, o);
    }
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<int> FiniteGroup::center() const {
    std::vector<int> z;
    for (int a = 0; a < n_; ++a) {
        bool central = true;
        for (int b = 0; b < n_ && central; ++b) central = mul(a, b) == mul(b, a);
        if (central) z.push_back(a);
    }
    return z;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
    std::vector<std::vector<int>> classes;
    std::vector<bool> seen(n_, false);
    for (int a = 0; a < n_; ++a) {
        if (seen[a]) continue;
        std::set<int> cls;
        for (int t = 0; t < n_; ++t) cls.insert(conj(a, t));
        std::vector<int> v(cls.begin(), cls.end());
        for (int x : v) seen[x] = true;
        classes.push_back(std::move(v));
    }
    return classes;
}

std::vector<int> FiniteGroup::commutator_subgroup() const {
    std::vector<int> comms;
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            comms.push_back(mul(mul(inv(a), inv(b)), mul(a, b)));
    return generated_subgroup(comms);
}

std::vector<int> FiniteGroup::generated_subgroup(const std::vector<int>& gens) const {
    std::vector<bool> in(n_, false);
    in[0] = true;
    std::vector<int> stack{0};
    for (int g : gens)
        if (!in[g]) {
            in[g] = true;
            stack.push_back(g);
        }
    std::vector<int> elems = stack;
    // close under products
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t i = 0; i < elems.size(); ++i)
            for (size_t j = 0; j < elems.size(); ++j) {
                int p = mul(elems[i], elems[j]);
                if (!in[p]) {
                    in[p] = true;
                    elems.push_back(p);
                    grew = true;
                }
            }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

std::vector<int> FiniteGroup::small_generating_set() const {
    std::vector<int> gens;
    std::vector<int> cur = generated_subgroup({});
    while ((int)cur.size() < n_) {
        int best = -1;
        size_t best_size = cur.size();
        std::vector<int> best_cl;
        for (int g = 0; g < n_; ++g) {
            if (std::binary_search(cur.begin(), cur.end(), g)) continue;
            auto trial = gens;
            trial.push_back(g);
            auto cl = generated_subgroup(trial);
            if (cl.size() > best_size) {
                best = g;
                best_size = cl.size();
                best_cl = cl;
            }
        }
        gens.push_back(best);
        cur = best_cl;
    }
    return gens;
}

int FiniteGroup::pow(int g, int64_t k) const {
    int o = elt_order_[g];
    k %= o;
    if (k < 0) k += o;
    int r = 0;
    for (int64_t i = 0; i < k; ++i) r = mul(r, g);
    return r;
}

// ---------------------------------------------------------------------------
// construction

namespace {

GroupPtr make_cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
        labels[i] = i == 0 ? "1" : (i == 1 ? "g" : "g^" + std::to_string(i));
    }
    return std::make_shared<FiniteGroup>(t, labels, "C" + std::to_string(n));
}

// Dihedral of order 2n: elements r^i s^e, index i + n*e.
GroupPtr make_dihedral(int n) {
    int m = 2 * n;
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    auto idx = [n](int i, int e) { return ((i % n + n) % n) + n * (e & 1); };
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < 2; ++e)
            for (int j = 0; j < n; ++j)
                for (int f = 0; f < 2; ++f) {
                    // (r^i s^e)(r^j s^f) = r^{i + j*(-1)^e} s^{e+f}
                    int k = e ? i - j : i + j;
                    t[idx(i, e)][idx(j, f)] = idx(k, e + f);
                }
    std::vector<std::string> labels(m);
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < 2; ++e) {
            std::string s = i == 0 ? "" : (i == 1 ? "r" : "r" + std::to_string(i));
            if (e) s += "s";
            if (s.empty()) s = "1";
            labels[idx(i, e)] = s;
        }
    return std::make_shared<FiniteGroup>(t, labels, "Dih" + std::to_string(n));
}

GroupPtr make_q8() {
    // order: 1, -1, i, -i, j, -j, k, -k
    const int O = 0, M = 1, I = 2, MI = 3, J = 4, MJ = 5, K = 6, MK = 7;
    auto neg = [](int x) { return x ^ 1; };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    // quaternion multiplication on {1,i,j,k} with signs
    auto base = [&](int a, int b, int& sign) -> int {
        // returns product of unsigned units; sign multiplied in
        static const int tbl[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sg[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
        sign *= sg[a][b];
        return tbl[a][b];
    };
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ua = a / 2, ub = b / 2;
            int sign = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1);
            int ur = base(ua, ub, sign);
            int r = ur * 2 + (sign < 0 ? 1 : 0);
            t[a][b] = r;
        }
    (void)O;
    (void)M;
    (void)I;
    (void)MI;
    (void)J;
    (void)MJ;
    (void)K;
    (void)MK;
    std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    return std::make_shared<FiniteGroup>(t, labels, "Q8");
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

GroupPtr construct_atom(const std::string& spec) {
    std::string s = trim(spec);
    if (s.empty()) throw ParseError("empty group spec");
    if (s == "S3") return make_dihedral(3);
    if (s == "D4") return make_dihedral(4);
    if (s == "Q8") return make_q8();
    if (s[0] == 'C') {
        int n = 0;
        try {
            n = std::stoi(s.substr(1));
        } catch (...) {
            throw ParseError("bad cyclic group spec: " + s);
        }
        if (n < 1) throw ParseError("cyclic order must be positive");
        return make_cyclic(n);
    }
    if (s.rfind("Dih", 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(s.substr(3));
        } catch (...) {
            throw ParseError("bad dihedral group spec: " + s);
        }
        if (n < 2) throw ParseError("dihedral parameter must be >= 2");
        return make_dihedral(n);
    }
    throw ParseError("unknown group spec: " + s);
}

}  // namespace

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
    int na = a->order(), nb = b->order();
    std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
    std::vector<std::string> labels(na * nb);
    auto idx = [nb](int x, int y) { return x * nb + y; };
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < nb; ++y) {
            labels[idx(x, y)] = "(" + a->label(x) + "," + b->label(y) + ")";
            for (int x2 = 0; x2 < na; ++x2)
                for (int y2 = 0; y2 < nb; ++y2)
                    t[idx(x, y)][idx(x2, y2)] = idx(a->mul(x, x2), b->mul(y, y2));
        }
    return std::make_shared<FiniteGroup>(t, labels, a->name() + "x" + b->name());
}

GroupPtr construct_group(const std::string& spec) {
    // split on 'x' tokens that separate factor expressions
    std::vector<std::string> parts;
    std::string cur;
    for (size_t i = 0; i < spec.size(); ++i) {
        char c = spec[i];
        bool sep = false;
        if (c == 'x') {
            // an 'x' is a separator unless part of "Dih..x"? names never contain x
            // except as separator; require boundary: previous token char is not a letter
            // start or next is digit-letter of new atom.  Simple rule: treat 'x'
            // as separator when the accumulated token already parses standalone.
            std::string t = trim(cur);
            if (!t.empty()) {
                try {
                    construct_atom(t);
                    sep = true;
                } catch (...) {
                    sep = false;
                }
            }
        }
        if (sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    GroupPtr g = construct_atom(parts[0]);
    for (size_t i = 1; i < parts.size(); ++i) g = direct_product(g, construct_atom(parts[i]));
    return g;
}

GroupPtr group_from_table(const std::vector<std::vector<int>>& table,
                          std::vector<std::string> labels, std::string name) {
    return std::make_shared<FiniteGroup>(table, std::move(labels), std::move(name));
}

// ---------------------------------------------------------------------------
// homomorphisms

GroupHom::GroupHom(GroupPtr s, GroupPtr d, std::vector<int> m, bool validate)
    : src(std::move(s)), dst(std::move(d)), map(std::move(m)) {
    if ((int)map.size() != src->order()) throw ShapeMismatch("hom map length");
    if (validate) {
        if (map[0] != 0) throw TableInvalid("hom does not fix identity");
        for (int a = 0; a < src->order(); ++a)
            for (int b = 0; b < src->order(); ++b)
                if (map[src->mul(a, b)] != dst->mul(map[a], map[b]))
                    throw TableInvalid("not a homomorphism at (" + std::to_string(a) + "," +
                                       std::to_string(b) + ")");
    }
}

bool GroupHom::is_injective() const {
    std::set<int> im(map.begin(), map.end());
    return (int)im.size() == src->order();
}

bool GroupHom::is_surjective() const {
    std::set<int> im(map.begin(), map.end());
    return (int)im.size() == dst->order();
}

bool GroupHom::is_trivial() const {
    for (int x : map)
        if (x != 0) return false;
    return true;
}

GroupHom GroupHom::identity(const GroupPtr& g) {
    std::vector<int> m(g->order());
    std::iota(m.begin(), m.end(), 0);
    return GroupHom(g, g, std::move(m), false);
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
    if (inner.dst.get() != src.get()) throw GroupMismatch("hom composition domain mismatch");
    std::vector<int> m(inner.src->order());
    for (int g = 0; g < inner.src->order(); ++g) m[g] = map[inner.map[g]];
    return GroupHom(inner.src, dst, std::move(m), false);
}

GroupHom GroupHom::inverse() const {
    if (!is_injective() || src->order() != dst->order())
        throw NotInvertible("hom is not bijective");
    std::vector<int> m(dst->order());
    for (int g = 0; g < src->order(); ++g) m[map[g]] = g;
    return GroupHom(dst, src, std::move(m), false);
}

std::vector<GroupHom> enumerate_homs(const GroupPtr& g, const GroupPtr& h, HomFilter filter) {
    if (g->order() > 16)
        throw SizeLimit("hom enumeration supported for |G| <= 16, got " +
                        std::to_string(g->order()));
    auto gens = g->small_generating_set();
    int n = g->order();
    std::vector<std::vector<int>> results;

    // partial map closure with conflict detection
    std::vector<int> pm(n, -1);
    pm[0] = 0;
    std::vector<std::vector<int>> snapshots;

    // elements currently known
    std::vector<int> known{0};

    std::function<bool(int, int)> assign = [&](int s, int t) -> bool {
        // returns false on conflict; extends pm and known
        if (pm[s] != -1) return pm[s] == t;
        pm[s] = t;
        known.push_back(s);
        size_t start = known.size() - 1;
        // close under products with all known
        for (size_t i = start; i < known.size(); ++i) {
            int a = known[i];
            size_t limit = known.size();
            for (size_t j = 0; j < limit; ++j) {
                int b = known[j];
                int ab = g->mul(a, b), ba = g->mul(b, a);
                int iab = h->mul(pm[a], pm[b]), iba = h->mul(pm[b], pm[a]);
                if (pm[ab] == -1) {
                    pm[ab] = iab;
                    known.push_back(ab);
                } else if (pm[ab] != iab)
                    return false;
                if (pm[ba] == -1) {
                    pm[ba] = iba;
                    known.push_back(ba);
                } else if (pm[ba] != iba)
                    return false;
            }
        }
        return true;
    };

    std::function<void(size_t)> rec = [&](size_t gi) {
        if (gi == gens.size()) {
            if ((int)known.size() != n) return;  // generators must reach everything
            results.push_back(pm);
            return;
        }
        int s = gens[gi];
        if (pm[s] != -1) {
            rec(gi + 1);
            return;
        }
        for (int t = 0; t < h->order(); ++t) {
            int os = g->element_order(s), ot = h->element_order(t);
            if (os % ot != 0) continue;
            if ((filter == HomFilter::Automorphisms || filter == HomFilter::Injective) && ot != os)
                continue;
            auto save_pm = pm;
            auto save_known = known;
            if (assign(s, t)) rec(gi + 1);
            pm = save_pm;
            known = save_known;
        }
    };
    rec(0);

    std::sort(results.begin(), results.end());
    std::vector<GroupHom> out;
    for (auto& m : results) {
        GroupHom hom(g, h, m, false);
        bool keep = true;
        switch (filter) {
            case HomFilter::All: break;
            case HomFilter::Injective: keep = hom.is_injective(); break;
            case HomFilter::Surjective: keep = hom.is_surjective(); break;
            case HomFilter::Automorphisms:
                keep = g.get() == h.get() && hom.is_injective();
                break;
        }
        if (keep) out.push_back(std::move(hom));
    }
    return out;
}

std::vector<GroupHom> central_automorphisms(const GroupPtr& g) {
    auto z = g->center();
    std::vector<bool> central(g->order(), false);
    for (int c : z) central[c] = true;
    std::vector<GroupHom> out;
    for (auto& v : enumerate_homs(g, g, HomFilter::Automorphisms)) {
        bool ok = true;
        for (int x = 0; x < g->order() && ok; ++x) ok = central[g->mul(v.map[x], g->inv(x))];
        if (ok) out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// abelian structure

AbelianDecomposition abelian_decomposition(const GroupPtr& a) {
    if (!a->is_abelian()) throw NotAbelian("abelian_decomposition on nonabelian group");
    AbelianDecomposition dec;
    dec.group = a;
    int n = a->order();
    if (n == 1) return dec;
    // relation matrix on all nontrivial elements: e_i + e_j - e_k for each
    // product g_i g_j = g_k (e_k dropped when the product is the identity)
    int m = n - 1;
    auto gi = [](int g) { return g - 1; };  // generator index of group element g >= 1
    std::vector<std::vector<int64_t>> rel_rows;
    for (int i = 1; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::vector<int64_t> row(m, 0);
            row[gi(i)] += 1;
            row[gi(j)] += 1;
            int k = a->mul(i, j);
            if (k != 0) row[gi(k)] -= 1;
            rel_rows.push_back(std::move(row));
        }
    ZMat r(m, (int64_t)rel_rows.size());
    for (size_t c = 0; c < rel_rows.size(); ++c)
        for (int i = 0; i < m; ++i) r.at(i, (int64_t)c) = rel_rows[c][i];
    auto s = smith_normal_form(r);
    // cokernel Z^m / im(R): generator i is the class of column i of U^{-1},
    // with order d_i
    for (int i = 0; i < m; ++i) {
        mpz_class d = i < (int64_t)std::min(r.rows(), r.cols()) ? s.d.at(i, i) : mpz_class(0);
        if (d == 1) continue;
        if (d == 0) throw InternalError("abelian relation lattice not full rank");
        // realize the generator as a group element
        int elt = 0;
        for (int j = 0; j < m; ++j) {
            mpz_class c = s.u_inv.at(j, i);
            int64_t e = mpz_class(c % a->order()).get_si();
            elt = a->mul(elt, a->pow(j + 1, e));
        }
        dec.invariant_factors.push_back((int)d.get_si());
        dec.invariant_generators.push_back(elt);
    }
    // SNF gives d_1 | d_2 | ...; sanity: product of factors equals |A|
    {
        int64_t prod = 1;
        for (int d : dec.invariant_factors) prod *= d;
        if (prod != n) throw InternalError("invariant factor product mismatch");
        for (size_t i = 0; i < dec.invariant_factors.size(); ++i)
            if (a->element_order(dec.invariant_generators[i]) != dec.invariant_factors[i])
                throw InternalError("invariant generator order mismatch");
    }
    // primary decomposition of each invariant factor
    std::vector<std::pair<int, int>> primaries;  // (p^k, generator element)
    for (size_t i = 0; i < dec.invariant_factors.size(); ++i) {
        int d = dec.invariant_factors[i];
        int gelt = dec.invariant_generators[i];
        int rest = d;
        for (int p = 2; p <= rest; ++p) {
            if (rest % p != 0) continue;
            int pk = 1;
            while (rest % p == 0) {
                rest /= p;
                pk *= p;
            }
            primaries.emplace_back(pk, a->pow(gelt, d / pk));
        }
    }
    std::sort(primaries.begin(), primaries.end());  // by order, then generator index
    for (auto& [pk, e] : primaries) {
        dec.primary_orders.push_back(pk);
        dec.primary_generators.push_back(e);
    }
    return dec;
}

DualGroup dual_group(const GroupPtr& a) {
    if (!a->is_abelian()) throw NotAbelian("dual_group of nonabelian group");
    auto dec = abelian_decomposition(a);
    DualGroup d;
    d.group = a;
    d.conductor = std::max(1, a->exponent());
    int k = (int)dec.invariant_factors.size();
    // coordinates of every element w.r.t. invariant generators
    int n = a->order();
    std::vector<std::vector<int>> coord(n);
    {
        std::vector<int> digits(k, 0);
        bool done = n == 0;
        std::vector<bool> seen(n, false);
        while (!done) {
            int e = 0;
            for (int i = 0; i < k; ++i) e = a->mul(e, a->pow(dec.invariant_generators[i], digits[i]));
            if (!seen[e]) {
                seen[e] = true;
                coord[e] = digits;
            }
            int i = k - 1;
            while (i >= 0) {
                if (++digits[i] < dec.invariant_factors[i]) break;
                digits[i] = 0;
                --i;
            }
            if (i < 0) done = true;
        }
        for (int e = 0; e < n; ++e)
            if (!seen[e]) throw InternalError("abelian coordinates do not cover the group");
    }
    // abstract dual group: product of the same cyclic factors (mixed radix,
    // most significant first, matching direct_product fold)
    GroupPtr dual = make_cyclic(k == 0 ? 1 : dec.invariant_factors[0]);
    for (int i = 1; i < k; ++i) dual = direct_product(dual, make_cyclic(dec.invariant_factors[i]));
    d.dual = dual;
    d.table.assign(n, std::vector<RootExp>(n, RootExp(d.conductor, 0)));
    // character indexed by digits (m_1..m_k): chi(e) = zeta^( sum m_i c_i N/d_i )
    for (int chi = 0; chi < n; ++chi) {
        // digits of chi in mixed radix
        std::vector<int> mdig(k, 0);
        int rest = chi;
        for (int i = k - 1; i >= 0; --i) {
            mdig[i] = rest % dec.invariant_factors[i];
            rest /= dec.invariant_factors[i];
        }
        for (int e = 0; e < n; ++e) {
            int64_t exp = 0;
            for (int i = 0; i < k; ++i)
                exp += (int64_t)mdig[i] * coord[e][i] * (d.conductor / dec.invariant_factors[i]);
            d.table[chi][e] = RootExp(d.conductor, exp);
        }
    }
    // perfect pairing: rows pairwise distinct
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (d.table[i] == d.table[j]) throw InternalError("character table rows collide");
    return d;
}

int DualGroup::index_of(const std::vector<RootExp>& values) const {
    for (size_t chi = 0; chi < table.size(); ++chi)
        if (table[chi] == values) return (int)chi;
    return -1;
}

// ---------------------------------------------------------------------------
// invariants, subgroups

GroupInvariants group_invariants(const GroupPtr& g) {
    GroupInvariants inv;
    inv.center = g->center();
    inv.commutator = g->commutator_subgroup();
    auto q = quotient_group(g, inv.commutator);
    inv.abelianization = q.quot;
    inv.ab_quotient_map = q.proj;
    inv.conjugacy_classes = g->conjugacy_classes();
    inv.exponent = g->exponent();
    return inv;
}

std::vector<std::vector<int>> all_subgroups(const GroupPtr& g) {
    if (g->order() > 32) throw SizeLimit("subgroup enumeration supported for |G| <= 32");
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> frontier;
    auto triv = g->generated_subgroup({});
    found.insert(triv);
    frontier.push_back(triv);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& h : frontier) {
            for (int x = 0; x < g->order(); ++x) {
                if (std::binary_search(h.begin(), h.end(), x)) continue;
                auto gens = h;
                gens.push_back(x);
                auto h2 = g->generated_subgroup(gens);
                if (found.insert(h2).second) next.push_back(h2);
            }
        }
        frontier = std::move(next);
    }
    std::vector<std::vector<int>> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

bool is_normal(const FiniteGroup& g, const std::vector<int>& sub) {
    for (int t = 0; t < g.order(); ++t)
        for (int s : sub)
            if (!std::binary_search(sub.begin(), sub.end(), g.conj(s, t))) return false;
    return true;
}

bool is_abelian_subset(const FiniteGroup& g, const std::vector<int>& sub) {
    for (int a : sub)
        for (int b : sub)
            if (g.mul(a, b) != g.mul(b, a)) return false;
    return true;
}

std::vector<std::vector<int>> normal_abelian_subgroups(const GroupPtr& g) {
    std::vector<std::vector<int>> out;
    for (auto& h : all_subgroups(g))
        if (is_normal(*g, h) && is_abelian_subset(*g, h)) out.push_back(h);
    return out;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> direct_factorizations(
    const GroupPtr& g) {
    auto subs = all_subgroups(g);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    for (const auto& h : subs) {
        if (!is_normal(*g, h)) continue;
        for (const auto& c : subs) {
            if ((int64_t)h.size() * (int64_t)c.size() != g->order()) continue;
            if (!is_abelian_subset(*g, c) || !is_normal(*g, c)) continue;
            // trivial intersection
            std::vector<int> inter;
            std::set_intersection(h.begin(), h.end(), c.begin(), c.end(),
                                  std::back_inserter(inter));
            if (inter.size() != 1) continue;
            out.emplace_back(h, c);
        }
    }
    return out;
}

SubgroupView subgroup_view(const GroupPtr& g, const std::vector<int>& elements,
                           const std::string& name) {
    std::vector<int> embed = elements;
    std::sort(embed.begin(), embed.end());
    if (embed.empty() || embed[0] != 0) throw TableInvalid("subgroup must contain the identity");
    std::vector<int> local(g->order(), -1);
    for (size_t i = 0; i < embed.size(); ++i) local[embed[i]] = (int)i;
    int m = (int)embed.size();
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) {
        labels[i] = g->label(embed[i]);
        for (int j = 0; j < m; ++j) {
            int p = g->mul(embed[i], embed[j]);
            if (local[p] < 0) throw TableInvalid("element set is not closed");
            t[i][j] = local[p];
        }
    }
    SubgroupView v;
    v.sub = std::make_shared<FiniteGroup>(t, labels, name);
    v.embed = embed;
    v.local_of = local;
    return v;
}

QuotientView quotient_group(const GroupPtr& g, const std::vector<int>& normal_sub) {
    if (!is_normal(*g, normal_sub)) throw TableInvalid("quotient by non-normal subgroup");
    int n = g->order();
    std::vector<int> coset_of(n, -1);
    std::vector<std::vector<int>> cosets;
    for (int x = 0; x < n; ++x) {
        if (coset_of[x] != -1) continue;
        std::vector<int> cs;
        for (int s : normal_sub) cs.push_back(g->mul(s, x));
        std::sort(cs.begin(), cs.end());
        int id = (int)cosets.size();
        for (int y : cs) coset_of[y] = id;
        cosets.push_back(cs);
    }
    // reorder with the identity coset first, rest by minimal element
    std::vector<int> order((int)cosets.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        bool ia = coset_of[0] == a, ib = coset_of[0] == b;
        if (ia != ib) return ia;
        return cosets[a][0] < cosets[b][0];
    });
    std::vector<int> newid((int)cosets.size());
    for (size_t i = 0; i < order.size(); ++i) newid[order[i]] = (int)i;
    int m = (int)cosets.size();
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    std::vector<std::string> labels(m);
    for (int a = 0; a < m; ++a) {
        labels[newid[a]] = "[" + g->label(cosets[a][0]) + "]";
        for (int b = 0; b < m; ++b) {
            int p = g->mul(cosets[a][0], cosets[b][0]);
            t[newid[a]][newid[b]] = newid[coset_of[p]];
        }
    }
    QuotientView qv;
    qv.quot = std::make_shared<FiniteGroup>(t, labels, g->name() + "/N");
    qv.proj.resize(n);
    for (int x = 0; x < n; ++x) qv.proj[x] = newid[coset_of[x]];
    return qv;
}

}  // namespace dgd
