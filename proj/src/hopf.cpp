#include "dgd/hopf.hpp"

#include <map>

namespace dgd {

namespace {

void add_term(SparseVec& v, int idx, const CycNum& c) {
    if (c.is_zero()) return;
    for (auto& t : v)
        if (t.idx == idx) {
            t.c += c;
            if (t.c.is_zero()) {
                t = v.back();
                v.pop_back();
            }
            return;
        }
    v.push_back({idx, c});
}

}  // namespace

std::vector<CycNum> HopfData::mul_vec(const std::vector<CycNum>& a,
                                      const std::vector<CycNum>& b) const {
    std::vector<CycNum> r(dim, CycNum::zero(conductor));
    for (int i = 0; i < dim; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < dim; ++j) {
            if (b[j].is_zero()) continue;
            CycNum f = a[i] * b[j];
            for (const auto& t : product(i, j)) r[t.idx] += f * t.c;
        }
    }
    return r;
}

CycNum HopfData::counit_of(const std::vector<CycNum>& a) const {
    CycNum r = CycNum::zero(conductor);
    for (int i = 0; i < dim; ++i)
        if (!a[i].is_zero()) r += a[i] * counit[i];
    return r;
}

std::vector<CycNum> HopfData::invert_element(const std::vector<CycNum>& a) const {
    // left multiplication matrix
    Mat lm(dim, dim, conductor);
    for (int i = 0; i < dim; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < dim; ++j)
            for (const auto& t : product(i, j)) lm.at(t.idx, j) += a[i] * t.c;
    }
    Mat rhs(dim, 1, conductor);
    for (int i = 0; i < dim; ++i) rhs.at(i, 0) = unit[i];
    auto sol = lm.solve(rhs);
    if (!sol) throw NotInvertible("element has no inverse");
    std::vector<CycNum> x(dim, CycNum::zero(conductor));
    for (int i = 0; i < dim; ++i) x[i] = sol->at(i, 0);
    // two-sided check
    auto check = mul_vec(x, a);
    for (int i = 0; i < dim; ++i)
        if (!(check[i] == unit[i])) throw NotInvertible("one-sided inverse only");
    return x;
}

bool HopfData::is_invertible(const std::vector<CycNum>& a) const {
    try {
        invert_element(a);
        return true;
    } catch (const NotInvertible&) {
        return false;
    }
}

std::vector<CycNum> basis_vector(const HopfData& h, int i) {
    std::vector<CycNum> v(h.dim, CycNum::zero(h.conductor));
    v[i] = CycNum::one(h.conductor);
    return v;
}

// ---------------------------------------------------------------------------
// builders

HopfData build_hopf(HopfKind kind, const GroupPtr& g, int64_t conductor) {
    int n = g->order();
    HopfData h;
    h.kind = kind;
    h.group = g;
    h.conductor = conductor;
    auto one = CycNum::one(conductor);
    switch (kind) {
        case HopfKind::GroupAlgebra: {
            h.dim = n;
            h.labels.resize(n);
            h.mul.assign(n * n, {});
            h.unit.assign(n, CycNum::zero(conductor));
            h.comul.assign(n, {});
            h.counit.assign(n, one);
            h.antipode.assign(n, {});
            h.unit[0] = one;
            for (int a = 0; a < n; ++a) {
                h.labels[a] = g->label(a);
                h.comul[a].push_back({a, a, one});
                h.antipode[a].push_back({g->inv(a), one});
                for (int b = 0; b < n; ++b) h.mul[a * n + b].push_back({g->mul(a, b), one});
            }
            break;
        }
        case HopfKind::FunctionAlgebra: {
            h.dim = n;
            h.labels.resize(n);
            h.mul.assign(n * n, {});
            h.unit.assign(n, one);  // 1 = sum of all e_x
            h.comul.assign(n, {});
            h.counit.assign(n, CycNum::zero(conductor));
            h.antipode.assign(n, {});
            h.counit[0] = one;
            for (int x = 0; x < n; ++x) {
                h.labels[x] = "e_" + g->label(x);
                h.mul[x * n + x].push_back({x, one});
                h.antipode[x].push_back({g->inv(x), one});
                for (int x1 = 0; x1 < n; ++x1) {
                    // x = x1 * x2
                    int x2 = g->mul(g->inv(x1), x);
                    h.comul[x].push_back({x1, x2, one});
                }
            }
            break;
        }
        case HopfKind::DrinfeldDouble: {
            // basis e_x (x) y at index x*n + y
            h.dim = n * n;
            h.labels.resize(h.dim);
            h.mul.assign((int64_t)h.dim * h.dim, {});
            h.unit.assign(h.dim, CycNum::zero(conductor));
            h.comul.assign(h.dim, {});
            h.counit.assign(h.dim, CycNum::zero(conductor));
            h.antipode.assign(h.dim, {});
            auto idx = [n](int x, int y) { return x * n + y; };
            for (int x = 0; x < n; ++x) h.unit[idx(x, 0)] = one;
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    int i = idx(x, y);
                    h.labels[i] = "e_" + g->label(x) + "*" + g->label(y);
                    h.counit[i] = x == 0 ? one : CycNum::zero(conductor);
                    // S(e_x x y) = e_{y^-1 x^-1 y} x y^-1
                    int yi = g->inv(y);
                    h.antipode[i].push_back({idx(g->conj(g->inv(x), y), yi), one});
                    // Delta(e_x x y) = sum_{x1 x2 = x} (e_x1 x y)(x)(e_x2 x y)
                    for (int x1 = 0; x1 < n; ++x1) {
                        int x2 = g->mul(g->inv(x1), x);
                        h.comul[i].push_back({idx(x1, y), idx(x2, y), one});
                    }
                    // (e_x x y)(e_x' x y') = [x' = y^-1 x y] (e_x x y y')
                    for (int xp = 0; xp < n; ++xp)
                        for (int yp = 0; yp < n; ++yp) {
                            if (xp != g->conj(x, y)) continue;
                            h.mul[(int64_t)i * h.dim + idx(xp, yp)].push_back(
                                {idx(x, g->mul(y, yp)), one});
                        }
                }
            break;
        }
        case HopfKind::DrinfeldDoubleDual: {
            // basis x (x) e_y at index x*n + y
            h.dim = n * n;
            h.labels.resize(h.dim);
            h.mul.assign((int64_t)h.dim * h.dim, {});
            h.unit.assign(h.dim, CycNum::zero(conductor));
            h.comul.assign(h.dim, {});
            h.counit.assign(h.dim, CycNum::zero(conductor));
            h.antipode.assign(h.dim, {});
            auto idx = [n](int x, int y) { return x * n + y; };
            for (int y = 0; y < n; ++y) h.unit[idx(0, y)] = one;
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    int i = idx(x, y);
                    h.labels[i] = g->label(x) + "*e_" + g->label(y);
                    h.counit[i] = y == 0 ? one : CycNum::zero(conductor);
                    // S(x x e_y) = y^-1 x^-1 y x e_{y^-1}
                    h.antipode[i].push_back({idx(g->conj(g->inv(x), y), g->inv(y)), one});
                    // Delta(x x e_y) = sum_{y1 y2 = y} (x x e_y1)(x)(y1^-1 x y1 x e_y2)
                    for (int y1 = 0; y1 < n; ++y1) {
                        int y2 = g->mul(g->inv(y1), y);
                        h.comul[i].push_back({idx(x, y1), idx(g->conj(x, y1), y2), one});
                    }
                    // (x x e_y)(x' x e_y') = [y = y'] (x x' x e_y)
                    for (int xp = 0; xp < n; ++xp)
                        h.mul[(int64_t)i * h.dim + idx(xp, y)].push_back(
                            {idx(g->mul(x, xp), y), one});
                }
            break;
        }
        case HopfKind::Custom: throw InternalError("build_hopf(Custom)");
    }
    return h;
}

// ---------------------------------------------------------------------------
// axiom verification

namespace {

// scratch accumulator over (i,j) pairs with sparse reset
struct PairAcc {
    int dim;
    std::vector<CycNum> val;
    std::vector<int64_t> touched;
    explicit PairAcc(int d, int64_t conductor)
        : dim(d), val((int64_t)d * d, CycNum::zero(conductor)) {}
    void add(int i, int j, const CycNum& c) {
        int64_t k = (int64_t)i * dim + j;
        if (val[k].is_zero() && !c.is_zero()) touched.push_back(k);
        val[k] += c;
    }
    void reset() {
        for (auto k : touched) val[k] = CycNum::zero(val[0].conductor());
        touched.clear();
    }
};

}  // namespace

AxiomReport verify_axioms(const HopfData& h) {
    AxiomReport rep;
    int d = h.dim;
    auto zero = CycNum::zero(h.conductor);
    auto push = [&](const std::string& name, bool pass, std::vector<int> witness) {
        rep.results.push_back({name, pass, std::move(witness)});
    };

    // associativity
    {
        bool pass = true;
        std::vector<int> wit;
        std::vector<CycNum> lhs(d, zero), rhs(d, zero);
        for (int a = 0; a < d && pass; ++a)
            for (int b = 0; b < d && pass; ++b) {
                const auto& ab = h.product(a, b);
                for (int c = 0; c < d && pass; ++c) {
                    for (auto& x : lhs) x = zero;
                    for (auto& x : rhs) x = zero;
                    for (const auto& t : ab)
                        for (const auto& u : h.product(t.idx, c)) lhs[u.idx] += t.c * u.c;
                    for (const auto& t : h.product(b, c))
                        for (const auto& u : h.product(a, t.idx)) rhs[u.idx] += t.c * u.c;
                    if (lhs != rhs) {
                        pass = false;
                        wit = {a, b, c};
                    }
                }
            }
        push("associativity", pass, wit);
    }
    // unit
    {
        bool pass = true;
        std::vector<int> wit;
        for (int a = 0; a < d && pass; ++a) {
            auto l = h.mul_vec(h.unit, basis_vector(h, a));
            auto r = h.mul_vec(basis_vector(h, a), h.unit);
            if (l != basis_vector(h, a) || r != basis_vector(h, a)) {
                pass = false;
                wit = {a};
            }
        }
        push("unit", pass, wit);
    }
    // coassociativity
    {
        bool pass = true;
        std::vector<int> wit;
        std::map<std::tuple<int, int, int>, CycNum> lhs, rhs;
        for (int a = 0; a < d && pass; ++a) {
            lhs.clear();
            rhs.clear();
            for (const auto& t : h.comul[a])
                for (const auto& u : h.comul[t.left]) {
                    auto key = std::make_tuple(u.left, u.right, t.right);
                    auto it = lhs.emplace(key, zero).first;
                    it->second += t.c * u.c;
                }
            for (const auto& t : h.comul[a])
                for (const auto& u : h.comul[t.right]) {
                    auto key = std::make_tuple(t.left, u.left, u.right);
                    auto it = rhs.emplace(key, zero).first;
                    it->second += t.c * u.c;
                }
            for (auto& [k, v] : lhs) {
                auto it = rhs.find(k);
                CycNum rv = it == rhs.end() ? zero : it->second;
                if (!(v == rv)) {
                    pass = false;
                    wit = {a};
                    break;
                }
            }
            for (auto& [k, v] : rhs) {
                if (lhs.find(k) == lhs.end() && !v.is_zero()) {
                    pass = false;
                    wit = {a};
                    break;
                }
            }
        }
        push("coassociativity", pass, wit);
    }
    // counit
    {
        bool pass = true;
        std::vector<int> wit;
        for (int a = 0; a < d && pass; ++a) {
            std::vector<CycNum> l(d, zero), r(d, zero);
            for (const auto& t : h.comul[a]) {
                l[t.right] += t.c * h.counit[t.left];
                r[t.left] += t.c * h.counit[t.right];
            }
            if (l != basis_vector(h, a) || r != basis_vector(h, a)) {
                pass = false;
                wit = {a};
            }
        }
        push("counit", pass, wit);
    }
    // bialgebra: Delta(ab) = Delta(a)Delta(b), eps(ab) = eps(a)eps(b),
    // Delta(1) = 1 (x) 1, eps(1) = 1
    {
        bool pass = true;
        std::vector<int> wit;
        PairAcc lhs(d, h.conductor), rhs(d, h.conductor);
        for (int a = 0; a < d && pass; ++a)
            for (int b = 0; b < d && pass; ++b) {
                lhs.reset();
                rhs.reset();
                for (const auto& t : h.product(a, b))
                    for (const auto& u : h.comul[t.idx]) lhs.add(u.left, u.right, t.c * u.c);
                for (const auto& ta : h.comul[a])
                    for (const auto& tb : h.comul[b]) {
                        CycNum f = ta.c * tb.c;
                        for (const auto& l : h.product(ta.left, tb.left))
                            for (const auto& r : h.product(ta.right, tb.right))
                                rhs.add(l.idx, r.idx, f * l.c * r.c);
                    }
                // compare
                for (auto k : lhs.touched)
                    if (!(lhs.val[k] == rhs.val[k])) {
                        pass = false;
                        wit = {a, b};
                        break;
                    }
                if (pass)
                    for (auto k : rhs.touched)
                        if (!(lhs.val[k] == rhs.val[k])) {
                            pass = false;
                            wit = {a, b};
                            break;
                        }
                // counit multiplicativity
                if (pass) {
                    CycNum e = zero;
                    for (const auto& t : h.product(a, b)) e += t.c * h.counit[t.idx];
                    if (!(e == h.counit[a] * h.counit[b])) {
                        pass = false;
                        wit = {a, b};
                    }
                }
            }
        if (pass) {
            // Delta(1) = 1 (x) 1
            PairAcc d1(d, h.conductor);
            for (int i = 0; i < d; ++i) {
                if (h.unit[i].is_zero()) continue;
                for (const auto& u : h.comul[i]) d1.add(u.left, u.right, h.unit[i] * u.c);
            }
            for (int i = 0; i < d && pass; ++i)
                for (int j = 0; j < d && pass; ++j) {
                    CycNum expect = h.unit[i] * h.unit[j];
                    if (!(d1.val[(int64_t)i * d + j] == expect)) pass = false;
                }
            if (!(h.counit_of(h.unit).is_one())) pass = false;
        }
        push("bialgebra", pass, wit);
    }
    // antipode: m(S (x) id)Delta = unit o counit = m(id (x) S)Delta
    {
        bool pass = true;
        std::vector<int> wit;
        for (int a = 0; a < d && pass; ++a) {
            std::vector<CycNum> l(d, zero), r(d, zero);
            for (const auto& t : h.comul[a]) {
                for (const auto& s : h.antipode[t.left])
                    for (const auto& u : h.product(s.idx, t.right)) l[u.idx] += t.c * s.c * u.c;
                for (const auto& s : h.antipode[t.right])
                    for (const auto& u : h.product(t.left, s.idx)) r[u.idx] += t.c * s.c * u.c;
            }
            for (int i = 0; i < d; ++i) {
                CycNum expect = h.counit[a] * h.unit[i];
                if (!(l[i] == expect) || !(r[i] == expect)) {
                    pass = false;
                    wit = {a};
                    break;
                }
            }
        }
        push("antipode", pass, wit);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// linear maps and convolution

std::vector<CycNum> LinMap::apply_basis(int i) const {
    std::vector<CycNum> r(dst->dim, CycNum::zero(dst->conductor));
    for (int j = 0; j < dst->dim; ++j) r[j] = mat.at(j, i);
    return r;
}

LinMap LinMap::compose(const LinMap& inner) const {
    if (inner.dst != src) throw ShapeMismatch("LinMap composition domain mismatch");
    LinMap r(inner.src, dst);
    r.mat = mat * inner.mat;
    return r;
}

LinMap convolve(const LinMap& f, const LinMap& g) {
    if (f.src != g.src || f.dst != g.dst) throw ShapeMismatch("convolution shape mismatch");
    LinMap r(f.src, f.dst);
    const HopfData& S = *f.src;
    const HopfData& D = *f.dst;
    for (int i = 0; i < S.dim; ++i) {
        std::vector<CycNum> acc(D.dim, CycNum::zero(D.conductor));
        for (const auto& t : S.comul[i]) {
            // f(left) * g(right) in D
            for (int p = 0; p < D.dim; ++p) {
                const CycNum& fp = f.mat.at(p, t.left);
                if (fp.is_zero()) continue;
                for (int q = 0; q < D.dim; ++q) {
                    const CycNum& gq = g.mat.at(q, t.right);
                    if (gq.is_zero()) continue;
                    CycNum coeff = t.c * fp * gq;
                    for (const auto& u : D.product(p, q)) acc[u.idx] += coeff * u.c;
                }
            }
        }
        for (int j = 0; j < D.dim; ++j) r.mat.at(j, i) = acc[j];
    }
    return r;
}

LinMap convolution_unit(const HopfData* src, const HopfData* dst) {
    LinMap r(src, dst);
    for (int i = 0; i < src->dim; ++i)
        for (int j = 0; j < dst->dim; ++j) r.mat.at(j, i) = src->counit[i] * dst->unit[j];
    return r;
}

std::vector<CycNum> conv1(const HopfData& h, const std::vector<CycNum>& f,
                          const std::vector<CycNum>& g) {
    std::vector<CycNum> r(h.dim, CycNum::zero(h.conductor));
    for (int i = 0; i < h.dim; ++i)
        for (const auto& t : h.comul[i]) r[i] += t.c * f[t.left] * g[t.right];
    return r;
}

std::vector<CycNum> conv1_inverse(const HopfData& h, const std::vector<CycNum>& f) {
    // (f*g)(i) = sum_t c f(left) g(right): linear in g
    Mat m(h.dim, h.dim, h.conductor);
    for (int i = 0; i < h.dim; ++i)
        for (const auto& t : h.comul[i]) m.at(i, t.right) += t.c * f[t.left];
    Mat rhs(h.dim, 1, h.conductor);
    for (int i = 0; i < h.dim; ++i) rhs.at(i, 0) = h.counit[i];
    auto sol = m.solve(rhs);
    if (!sol) throw NotInvertible("1-cochain not convolution invertible");
    std::vector<CycNum> g(h.dim, CycNum::zero(h.conductor));
    for (int i = 0; i < h.dim; ++i) g[i] = sol->at(i, 0);
    // verify the other side
    auto gf = conv1(h, g, f);
    for (int i = 0; i < h.dim; ++i)
        if (!(gf[i] == h.counit[i])) throw NotInvertible("one-sided convolution inverse");
    return g;
}

// ---------------------------------------------------------------------------
// twists

bool TwistedAlgebra::associative() const {
    int d = host->dim;
    auto zero = CycNum::zero(host->conductor);
    std::vector<CycNum> lhs(d, zero), rhs(d, zero);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                for (auto& x : lhs) x = zero;
                for (auto& x : rhs) x = zero;
                for (const auto& t : mul[a * d + b])
                    for (const auto& u : mul[t.idx * d + c]) lhs[u.idx] += t.c * u.c;
                for (const auto& t : mul[b * d + c])
                    for (const auto& u : mul[a * d + t.idx]) rhs[u.idx] += t.c * u.c;
                if (lhs != rhs) return false;
            }
    return true;
}

TwistedAlgebra twist_algebra(const HopfData& h, const Mat& sigma) {
    TwistedAlgebra t;
    t.host = &h;
    t.unit = h.unit;
    int d = h.dim;
    t.mul.assign((int64_t)d * d, {});
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            SparseVec acc;
            for (const auto& ta : h.comul[a])
                for (const auto& tb : h.comul[b]) {
                    CycNum s = sigma.at(ta.left, tb.left);
                    if (s.is_zero()) continue;
                    CycNum f = s * ta.c * tb.c;
                    for (const auto& u : h.product(ta.right, tb.right))
                        add_term(acc, u.idx, f * u.c);
                }
            t.mul[(int64_t)a * d + b] = std::move(acc);
        }
    return t;
}

std::vector<CoTerm3> double_comul(const HopfData& h, int i) {
    std::vector<CoTerm3> out;
    for (const auto& t : h.comul[i])
        for (const auto& u : h.comul[t.left]) out.push_back({u.left, u.right, t.right, t.c * u.c});
    return out;
}

HopfData doi_twist(const HopfData& h, const Mat& sigma, const Mat& sigma_inv) {
    HopfData out = h;
    out.kind = HopfKind::Custom;
    int d = h.dim;
    for (int a = 0; a < d; ++a) {
        auto da = double_comul(h, a);
        for (int b = 0; b < d; ++b) {
            auto db = double_comul(h, b);
            SparseVec acc;
            for (const auto& ta : da)
                for (const auto& tb : db) {
                    CycNum s1 = sigma.at(ta.a, tb.a);
                    if (s1.is_zero()) continue;
                    CycNum s2 = sigma_inv.at(ta.c, tb.c);
                    if (s2.is_zero()) continue;
                    CycNum f = s1 * s2 * ta.coeff * tb.coeff;
                    for (const auto& u : h.product(ta.b, tb.b)) add_term(acc, u.idx, f * u.c);
                }
            out.mul[(int64_t)a * d + b] = std::move(acc);
        }
    }
    return out;
}

CanonicalMaps canonical_maps(const HopfData& kg, const HopfData& kdual, const HopfData& dgstar) {
    const GroupPtr& g = dgstar.group;
    int n = g->order();
    CanonicalMaps cm;
    cm.iota = LinMap(&kdual, &dgstar);
    cm.p = LinMap(&dgstar, &kg);
    cm.s = LinMap(&dgstar, &kdual);
    cm.t = LinMap(&kg, &dgstar);
    auto one = CycNum::one(dgstar.conductor);
    for (int x = 0; x < n; ++x) {
        cm.iota.mat.at(dgstar.pair_index(0, x), x) = one;  // e_x -> 1 x e_x
        // t(g) = g x 1 = sum_y (g x e_y)
        for (int y = 0; y < n; ++y) cm.t.mat.at(dgstar.pair_index(x, y), x) = one;
    }
    for (int gidx = 0; gidx < n; ++gidx)
        for (int y = 0; y < n; ++y) {
            int i = dgstar.pair_index(gidx, y);
            // p(g x e_y) = [y = 1] g
            if (y == 0) cm.p.mat.at(gidx, i) = one;
            // s(g x e_y) = e_y
            cm.s.mat.at(y, i) = one;
        }
    return cm;
}

}  // namespace dgd
