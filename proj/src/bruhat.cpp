#include "dgd/bruhat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace dgd {

// ---------------------------------------------------------------------------
// block view

BlockView build_block_view(const DGContext& ctx) {
    const auto& g = ctx.g;
    auto facts = direct_factorizations(g);
    std::vector<int> best_h, best_c;
    bool found = false;
    for (auto& [h, c] : facts) {
        auto hv = subgroup_view(g, h, "H");
        bool pure = true;
        for (auto& [h2, c2] : direct_factorizations(hv.sub))
            if (c2.size() > 1) pure = false;
        if (!pure) continue;
        if (!found || c.size() > best_c.size() || (c.size() == best_c.size() && h < best_h)) {
            best_h = h;
            best_c = c;
            found = true;
        }
    }
    if (!found) throw NoBlockView("no H x C decomposition with purely non-abelian H");
    BlockView bv;
    bv.H = subgroup_view(g, best_h, "H");
    auto cview = subgroup_view(g, best_c, "C");
    auto dec = abelian_decomposition(cview.sub);
    for (size_t k = 0; k < dec.primary_orders.size(); ++k) {
        int gen = cview.embed[dec.primary_generators[k]];
        std::vector<int> elems;
        int x = 0;
        do {
            elems.push_back(x);
            x = g->mul(x, gen);
        } while (x != 0);
        std::sort(elems.begin(), elems.end());
        bv.C.push_back(subgroup_view(g, elems, "C" + std::to_string(k)));
        bv.orders.push_back(dec.primary_orders[k]);
    }
    int n = g->order();
    bv.hpart.assign(n, -1);
    bv.cpart.assign(bv.C.size(), std::vector<int>(n, -1));
    std::vector<int> sizes{bv.H.sub->order()};
    for (auto& cv : bv.C) sizes.push_back(cv.sub->order());
    int64_t total = 1;
    for (int s : sizes) total *= s;
    if (total != n) throw NoBlockView("factor orders do not multiply to |G|");
    for (int64_t t = 0; t < total; ++t) {
        int64_t rest = t;
        std::vector<int> dig(sizes.size());
        for (int k = (int)sizes.size() - 1; k >= 0; --k) {
            dig[k] = (int)(rest % sizes[k]);
            rest /= sizes[k];
        }
        int elt = bv.H.embed[dig[0]];
        for (size_t k = 0; k < bv.C.size(); ++k) elt = g->mul(elt, bv.C[k].embed[dig[k + 1]]);
        if (bv.hpart[elt] != -1) throw NoBlockView("decomposition is not unique");
        bv.hpart[elt] = bv.H.embed[dig[0]];
        for (size_t k = 0; k < bv.C.size(); ++k) bv.cpart[k][elt] = bv.C[k].embed[dig[k + 1]];
    }
    return bv;
}

// ---------------------------------------------------------------------------
// reflection pattern

namespace {

struct ReflectionShape {
    ReflectionDatum datum;
    bool twisted;
};

std::optional<ReflectionShape> reflection_shape(const DGContext& ctx, const AutDG& m) {
    const auto& g = *ctx.g;
    int n = g.order();
    std::vector<int> c_elems, h_elems;
    for (int x = 0; x < n; ++x) {
        if (m.ustar[x] == 0) c_elems.push_back(x);
        if (m.ustar[x] == x) h_elems.push_back(x);
    }
    if ((int64_t)c_elems.size() * (int64_t)h_elems.size() != n) return std::nullopt;
    ReflectionShape rs;
    try {
        rs.datum.H = subgroup_view(ctx.g, h_elems, "Hrefl");
        rs.datum.C = subgroup_view(ctx.g, c_elems, "Crefl");
    } catch (const Error&) {
        return std::nullopt;
    }
    int nc = rs.datum.C.sub->order();
    rs.datum.nu.assign(nc, -1);
    for (int lc = 0; lc < nc; ++lc) {
        int img = m.vhom[rs.datum.C.embed[lc]];
        if (rs.datum.C.local_of[img] < 0) return std::nullopt;
        rs.datum.nu[lc] = rs.datum.C.local_of[img];
    }
    for (int h : h_elems)
        if (m.vhom[h] != h) return std::nullopt;
    rs.datum.delta_exp.assign(nc, std::vector<int64_t>(nc, 0));
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j)
            rs.datum.delta_exp[i][j] = m.b_exp[rs.datum.C.embed[i]][rs.datum.C.embed[j]];
    rs.twisted = rs.datum.twisted();
    try {
        if (!(make_reflection(ctx, rs.datum) == m)) return std::nullopt;
    } catch (const Error&) {
        return std::nullopt;
    }
    return rs;
}

std::string abelian_type(const GroupPtr& g) {
    if (g->order() == 1) return "1";
    auto dec = abelian_decomposition(g);
    std::string s;
    for (size_t i = 0; i < dec.invariant_factors.size(); ++i) {
        if (i) s += "x";
        s += "C" + std::to_string(dec.invariant_factors[i]);
    }
    return s;
}

// The class invariant of the cell theorem: the type of the plain-reflection
// representative of the double coset.  A twisted reflection r_{(H,C,delta,nu)}
// shares its coset invariants with a plain reflection of type C / im(nu), so
// the twist rank is divided out.
std::string reflection_class_of(const ReflectionDatum& d) {
    std::vector<int> im;
    for (int x : d.nu) im.push_back(x);
    auto sub = d.C.sub->generated_subgroup(im);
    auto q = quotient_group(d.C.sub, sub);
    return abelian_type(q.quot);
}

// ---------------------------------------------------------------------------
// eliminator

constexpr int kActive = 0, kDone = 1, kReflected = 2;

struct Elim {
    const DGContext& ctx;
    const BlockView& bv;
    DecompVariant variant;
    AutDG cur;
    std::vector<CertFactor> lefts;   // application order; cur = L_k ... L_1 phi R_1 ... R_m
    std::vector<CertFactor> rights;
    std::vector<int> status;

    Elim(const DGContext& c, const BlockView& b, const AutDG& phi, DecompVariant v)
        : ctx(c), bv(b), variant(v), cur(phi), status(b.n_factors(), kActive) {}

    const FiniteGroup& G() const { return *ctx.g; }
    int n() const { return ctx.n(); }
    int64_t N() const { return ctx.conductor; }
    bool dbl() const { return variant == DecompVariant::Double; }

    void apply_left(FactorKind k, const AutDG& x) {
        cur = compose(ctx, x, cur);
        lefts.push_back({k, x});
    }
    void apply_right(FactorKind k, const AutDG& x) {
        cur = compose(ctx, cur, x);
        rights.push_back({k, x});
    }
    void apply_left_vw(const GroupHom& w) {  // (1,0;0,w) = V(w) Vc(w^{-1})
        apply_left(FactorKind::Vc, make_Vc(ctx, w.inverse()));
        apply_left(FactorKind::V, make_V(ctx, w));
    }
    void apply_right_vw(const GroupHom& w) {
        apply_right(FactorKind::V, make_V(ctx, w));
        apply_right(FactorKind::Vc, make_Vc(ctx, w.inverse()));
    }

    int comp(int i, int g) const { return bv.cpart[i][g]; }
    int hcomp(int g) const { return bv.hpart[g]; }
    int strip(int i, int g) const { return G().mul(g, G().inv(comp(i, g))); }
    int generator(int i) const {
        int best = bv.C[i].embed.back();
        for (int x : bv.C[i].embed)
            if (G().element_order(x) > G().element_order(best)) best = x;
        return best;
    }
    int refl_part(int g) const {
        int r = 0;
        for (int i = 0; i < bv.n_factors(); ++i)
            if (status[i] == kReflected) r = G().mul(r, comp(i, g));
        return r;
    }
    // H and settled cyclic components of g
    int settled_part(int g) const {
        int r = hcomp(g);
        for (int i = 0; i < bv.n_factors(); ++i)
            if (status[i] == kDone) r = G().mul(r, comp(i, g));
        return r;
    }
    std::vector<int> refl_elements() const {
        std::vector<int> gens;
        for (int i = 0; i < bv.n_factors(); ++i)
            if (status[i] == kReflected) gens.push_back(generator(i));
        return G().generated_subgroup(gens);
    }

    GroupHom hom(std::vector<int> m) const { return GroupHom(ctx.g, ctx.g, std::move(m)); }

    // ---- phase A: the v/b case analysis per cyclic block --------------------

    bool v_diag_inj(int i) const {
        return G().element_order(comp(i, cur.vhom[generator(i)])) == bv.orders[i];
    }
    bool b_diag_inj(int i) const {
        int gen = generator(i);
        int64_t e = ((cur.b_exp[gen][gen] % N()) + N()) % N();
        return N() / std::gcd(e, N()) == bv.orders[i];
    }

    void phase_a_column(int i) {
        for (int guard = 0; guard <= bv.n_factors() + 1; ++guard) {
            if (v_diag_inj(i)) {
                // case (1), v branch: normalize the v column to the inclusion
                std::vector<int> psi_inv(n(), -1);
                for (int c : bv.C[i].embed) psi_inv[comp(i, cur.vhom[c])] = c;
                std::vector<int> m(n());
                for (int g = 0; g < n(); ++g) {
                    int q = psi_inv[comp(i, g)];
                    if (q < 0) throw InternalError("v diagonal not bijective");
                    m[g] = G().mul(G().mul(g, G().inv(cur.vhom[q])), q);
                }
                apply_left_vw(hom(m));
                for (int c : bv.C[i].embed)
                    if (cur.vhom[c] != c) throw InternalError("v column not clean");
                // kill the b column: b'(y) = b(iota_i p_i y)^{-1}
                std::vector<std::vector<int64_t>> be(n(), std::vector<int64_t>(n(), 0));
                for (int y = 0; y < n(); ++y) {
                    int c = comp(i, y);
                    for (int x = 0; x < n(); ++x)
                        be[y][x] = ((-cur.b_exp[c][x]) % N() + N()) % N();
                }
                apply_left(FactorKind::B, make_B(ctx, be));
                for (int c : bv.C[i].embed)
                    for (int x = 0; x < n(); ++x)
                        if (cur.b_exp[c][x] % N() != 0) throw InternalError("b column alive");
                if (dbl()) {
                    // push the v-row to the right coset side
                    std::vector<int> mr(n());
                    for (int g = 0; g < n(); ++g)
                        mr[g] = G().mul(g, G().inv(comp(i, cur.vhom[strip(i, g)])));
                    apply_right_vw(hom(mr));
                }
                status[i] = kDone;
                return;
            }
            // exhaust v-carriers (swap with active, fold from processed)
            // before conceding a reflected block: the twist rank of the final
            // reflection is bounded by nilpotency
            bool progressed = false;
            for (int j = i - 1; j >= 0 && !progressed; --j) {
                if (status[j] != kActive) continue;
                if (G().element_order(comp(j, cur.vhom[generator(i)])) != bv.orders[i]) continue;
                if (bv.orders[i] != bv.orders[j])
                    throw CaseThreeReached("injective v cross block of unequal order");
                apply_left_vw(swap_hom(i, j));
                progressed = true;
            }
            if (progressed) continue;
            if (try_fold_v(i)) continue;
            if (b_diag_inj(i)) {
                phase_b_narrow(i);
                return;
            }
            for (int j = i - 1; j >= 0 && !progressed; --j) {
                if (status[j] != kActive) continue;
                int64_t e = ((cur.b_exp[generator(i)][generator(j)] % N()) + N()) % N();
                if (N() / std::gcd(e, N()) != bv.orders[i]) continue;
                if (bv.orders[i] != bv.orders[j])
                    throw CaseThreeReached("injective b cross block of unequal order");
                apply_left(FactorKind::Vc, make_Vc(ctx, swap_hom(i, j)));
                progressed = true;
            }
            if (progressed) continue;
            if (try_fold_b(i)) continue;
            throw CaseThreeReached("no admissible case for cyclic block " +
                                   std::to_string(i) + "; state " + cur.key());
        }
        throw InternalError("phase A failed to stabilize");
    }

    GroupHom swap_hom(int i, int j) const {
        int gi = generator(i), gj = generator(j);
        std::vector<int> m(n());
        for (int g = 0; g < n(); ++g) {
            int s = dlog(gi, comp(i, g));
            int t = dlog(gj, comp(j, g));
            int base = strip(i, strip(j, g));
            m[g] = G().mul(base, G().mul(G().pow(gj, s), G().pow(gi, t)));
        }
        return hom(m);
    }
    int dlog(int gen, int x) const {
        int e = 0, y = 0;
        while (y != x) {
            y = G().mul(y, gen);
            if (++e > n()) throw InternalError("dlog out of range");
        }
        return e;
    }

    // case (1) b branch: narrow the b column of C_i to the diagonal pairing
    void phase_b_narrow(int i) {
        std::vector<int> m(n());
        for (int y = 0; y < n(); ++y) {
            int base = strip(i, y);
            int found = -1;
            for (int t : bv.C[i].embed) {
                bool ok = true;
                for (int c : bv.C[i].embed)
                    if ((cur.b_exp[c][t] + cur.b_exp[c][base]) % N() != 0) ok = false;
                if (ok) {
                    found = t;
                    break;
                }
            }
            if (found < 0) throw InternalError("pairing solve failed (b column)");
            m[y] = G().mul(y, found);
        }
        apply_left(FactorKind::Vc, make_Vc(ctx, hom(m).inverse()));
        for (int c : bv.C[i].embed)
            for (int x = 0; x < n(); ++x)
                if ((cur.b_exp[c][x] - cur.b_exp[c][comp(i, x)]) % N() != 0)
                    throw InternalError("b column not diagonal");
        status[i] = kReflected;
    }

    // Fold an injective v entry from a processed row onto the diagonal.
    bool try_fold_v(int i) {
        int geni = generator(i);
        for (int j = 0; j < bv.n_factors(); ++j) {
            if (j == i || status[j] == kActive) continue;
            if (G().element_order(comp(j, cur.vhom[geni])) != bv.orders[i]) continue;
            int genj = generator(j);
            for (int z : bv.C[i].embed) {
                if (z == 0) continue;
                if (G().element_order(genj) % G().element_order(z) != 0) continue;
                // w(y) = y * iota_i(rho(p_j y)), rho(gen_j) = z
                std::vector<int> m(n());
                for (int y = 0; y < n(); ++y) {
                    int t = dlog(genj, comp(j, y));
                    m[y] = G().mul(y, G().pow(z, t));
                }
                int nd = G().mul(comp(i, cur.vhom[geni]),
                                 G().pow(z, dlog(genj, comp(j, cur.vhom[geni]))));
                if (G().element_order(nd) != bv.orders[i]) continue;
                apply_left_vw(hom(m));
                return true;
            }
        }
        return false;
    }

    // Fold an injective b entry from a processed row onto the diagonal.
    bool try_fold_b(int i) {
        int geni = generator(i);
        for (int j = 0; j < bv.n_factors(); ++j) {
            if (j == i || status[j] == kActive) continue;
            int64_t e = ((cur.b_exp[geni][generator(j)] % N()) + N()) % N();
            if (N() / std::gcd(e, N()) != bv.orders[i]) continue;
            for (int y : bv.C[j].embed) {
                if (y == 0) continue;
                if (bv.orders[i] % G().element_order(y) != 0) continue;
                // x^{-1}(g) = g * iota_j(tau(p_i g)), tau(gen_i) = y
                std::vector<int> m(n());
                for (int g = 0; g < n(); ++g) {
                    int t = dlog(geni, comp(i, g));
                    m[g] = G().mul(g, G().pow(y, t));
                }
                GroupHom xinv = hom(m);
                int64_t nd = ((cur.b_exp[geni][xinv.map[geni]] % N()) + N()) % N();
                if (N() / std::gcd(nd, N()) != bv.orders[i]) continue;
                apply_left(FactorKind::Vc, make_Vc(ctx, xinv.inverse()));
                return true;
            }
        }
        return false;
    }

    // establish a bijective u diagonal on settled blocks while the a block is
    // still alive (B shifts route carriers from a into u)
    bool step_u_carrier() {
        bool changed = false;
        for (int i = 0; i < bv.n_factors(); ++i) {
            if (status[i] != kDone) continue;
            int gen = generator(i);
            if (G().element_order(comp(i, cur.ustar[gen])) == bv.orders[i]) continue;
            bool fixed = false;
            for (auto& be : enumerate_bicharacters(ctx)) {
                AutDG b = make_B(ctx, be);
                auto trial = compose(ctx, b, cur);
                if (G().element_order(comp(i, trial.ustar[gen])) == bv.orders[i]) {
                    apply_left(FactorKind::B, b);
                    fixed = true;
                    changed = true;
                    break;
                }
            }
            // cross-column carrier inside u: fold or swap with a left Vc
            if (!fixed) {
                for (auto& w : cached_central_automorphisms(ctx)) {
                    AutDG vc = make_Vc(ctx, w);
                    auto trial = compose(ctx, vc, cur);
                    if (G().element_order(comp(i, trial.ustar[gen])) == bv.orders[i]) {
                        apply_left(FactorKind::Vc, vc);
                        fixed = true;
                        changed = true;
                        break;
                    }
                }
            }
            if (!fixed) return changed;  // give other steps a chance first
        }
        return changed;
    }

    // folds can dirty the v columns of settled blocks; re-clean them
    bool step_v_done_recheck() {
        bool changed = false;
        for (int j = 0; j < bv.n_factors(); ++j) {
            if (status[j] != kDone) continue;
            bool clean = true;
            for (int c : bv.C[j].embed) clean &= cur.vhom[c] == c;
            if (clean) continue;
            std::vector<int> psi_inv(n(), -1);
            for (int c : bv.C[j].embed) psi_inv[comp(j, cur.vhom[c])] = c;
            std::vector<int> m(n());
            for (int g = 0; g < n(); ++g) {
                int q = psi_inv[comp(j, g)];
                if (q < 0) throw InternalError("settled v diagonal lost bijectivity");
                m[g] = G().mul(G().mul(g, G().inv(cur.vhom[q])), q);
            }
            apply_left_vw(hom(m));
            changed = true;
        }
        return changed;
    }

    // ---- cleanup steps (fixpoint loop) ---------------------------------------

    // b must become b(g)(h) = b(g_refl)(h_refl)
    bool step_b_residual() {
        bool needed = false;
        for (int g = 0; g < n() && !needed; ++g)
            for (int h = 0; h < n() && !needed; ++h)
                needed = (cur.b_exp[g][h] - cur.b_exp[refl_part(g)][refl_part(h)]) % N() != 0;
        if (!needed) return false;
        std::vector<std::vector<int64_t>> be(n(), std::vector<int64_t>(n(), 0));
        for (int g = 0; g < n(); ++g)
            for (int h = 0; h < n(); ++h) {
                int64_t v = cur.b_exp[refl_part(g)][refl_part(h)] - cur.b_exp[g][h];
                be[g][h] = ((v % N()) + N()) % N();
            }
        apply_left(FactorKind::B, make_B(ctx, be));
        return true;
    }

    // Normalize v on H inputs and kill non-reflected extras of v.
    bool step_v_residual() {
        bool changed = false;
        if (bv.H.sub->order() > 1) {
            std::set<int> im;
            for (int h : bv.H.embed) im.insert(hcomp(cur.vhom[h]));
            if ((int)im.size() != bv.H.sub->order())
                throw CaseThreeReached("v_{H,H} not bijective");
            bool vh_id = true;
            for (int h : bv.H.embed) vh_id &= hcomp(cur.vhom[h]) == h;
            if (!vh_id) {
                std::vector<int> inv_of(n(), -1);
                for (int h : bv.H.embed) inv_of[hcomp(cur.vhom[h])] = h;
                std::vector<int> m(n());
                for (int g = 0; g < n(); ++g) {
                    int h = hcomp(g);
                    int rest = G().mul(G().inv(h), g);
                    m[g] = G().mul(inv_of[h], rest);
                }
                apply_left(FactorKind::V, make_V(ctx, hom(m)));
                changed = true;
            }
            // kill C components of v on H inputs: w(y) = y * f(y)^{-1},
            // f(y) = C-part of v(iota_H p_H(y))
            bool hcol = true;
            for (int h : bv.H.embed) hcol &= cur.vhom[h] == h;
            if (!hcol) {
                std::vector<int> m(n());
                for (int y = 0; y < n(); ++y) {
                    int vih = cur.vhom[hcomp(y)];
                    int cpartv = G().mul(G().inv(hcomp(vih)), vih);
                    m[y] = G().mul(y, G().inv(cpartv));
                }
                apply_left_vw(hom(m));
                changed = true;
            }
        }
        if (dbl()) {
            // single closed-form right correction: v(g) <- v(g) * extra(g)^{-1}
            // where extra(g) = v(g) * (settled(g) * refl(v(g)))^{-1} lies in the
            // settled central part, fixed pointwise by v
            bool need = false;
            std::vector<int> d(n());
            for (int g = 0; g < n(); ++g) {
                int target = G().mul(settled_part(g), refl_part(cur.vhom[g]));
                d[g] = G().mul(G().inv(cur.vhom[g]), target);
                if (d[g] != 0) need = true;
            }
            if (need) {
                bool fixable = true;
                for (int g = 0; g < n() && fixable; ++g) fixable = cur.vhom[d[g]] == d[g];
                if (!fixable) throw CaseThreeReached("v residual not fixed pointwise by v");
                std::vector<int> w(n());
                for (int g = 0; g < n(); ++g) w[g] = G().mul(g, d[g]);
                apply_right_vw(hom(w));
                changed = true;
            }
        }
        return changed;
    }

    // a must have A = B = the reflected subgroup (or the trivial datum)
    bool step_a_side() {
        auto relems = refl_elements();
        auto full = [&](const AutDG& m) {
            if (relems.size() == 1) return m.a.trivial();
            return m.a.A == relems && m.a.B == relems;
        };
        if (full(cur)) return false;
        bool changed = false;
        // the domain support is relabeled by a right Vc, the image support by
        // a left (1,0;0,w); both searches run over central automorphisms
        if (cur.a.A.size() == relems.size() && cur.a.A != relems) {
            for (auto& v : cached_central_automorphisms(ctx)) {
                std::vector<int> img;
                for (int x : relems) img.push_back(v.map[x]);
                std::sort(img.begin(), img.end());
                if (img != cur.a.A) continue;
                if (dbl()) {
                    apply_right(FactorKind::Vc, make_Vc(ctx, v));
                } else {
                    // one-sided: precomposition uses a left Vc instead; the
                    // a-block domain moves under ustar-side relabelings only
                    // through the right, so fall back to the E search below
                    break;
                }
                changed = true;
                break;
            }
        }
        if (cur.a.B.size() == relems.size() && cur.a.B != relems) {
            for (auto& v : cached_central_automorphisms(ctx)) {
                std::vector<int> img;
                for (int x : cur.a.B) img.push_back(v.map[x]);
                std::sort(img.begin(), img.end());
                if (img != relems) continue;
                apply_left_vw(v);
                changed = true;
                break;
            }
        }
        if (full(cur)) return true;
        // progressive E shifts: reduce the support mismatch monotonically
        auto score = [&](const AutDG& m) {
            auto sym = [&](const std::vector<int>& s) {
                int d = 0;
                for (int x : s)
                    if (!std::binary_search(relems.begin(), relems.end(), x)) ++d;
                for (int x : relems)
                    if (!std::binary_search(s.begin(), s.end(), x)) ++d;
                return d;
            };
            return sym(m.a.A) + sym(m.a.B);
        };
        int best = score(cur);
        std::optional<ADatum> pick;
        auto cands = enumerate_a_data(ctx);
        for (auto& ad : cands) {
            AutDG e = make_E(ctx, ad);
            AutDG trial = dbl() ? compose(ctx, cur, e) : compose(ctx, e, cur);
            if (full(trial)) {
                pick = ad;
                break;
            }
            int s = score(trial);
            if (s < best) {
                best = s;
                pick = ad;
            }
        }
        if (pick) {
            AutDG e = make_E(ctx, *pick);
            if (dbl())
                apply_right(FactorKind::E, e);
            else
                apply_left(FactorKind::E, e);
            return true;
        }
        return changed;
    }

    // kill the reflected output components of ustar with a left B element
    // coupled to the current a pairing
    bool step_u_refl() {
        auto relems = refl_elements();
        if (relems.size() == 1) return false;
        bool needed = false;
        for (int h = 0; h < n() && !needed; ++h) needed = refl_part(cur.ustar[h]) != 0;
        if (!needed) return false;
        if (cur.a.A != relems || cur.a.B != relems) return false;  // wait for step_a_side
        auto loc = [&](int x) {
            auto it = std::lower_bound(relems.begin(), relems.end(), x);
            return (int)(it - relems.begin());
        };
        std::vector<std::vector<int64_t>> be(n(), std::vector<int64_t>(n(), 0));
        for (int g = 0; g < n(); ++g) {
            int rg = refl_part(g);
            for (int h = 0; h < n(); ++h)
                be[g][h] = ((-cur.a.chi_exp[loc(rg)][loc(refl_part(cur.ustar[h]))]) % N() + N()) % N();
        }
        apply_left(FactorKind::B, make_B(ctx, be));
        for (int h = 0; h < n(); ++h)
            if (refl_part(cur.ustar[h]) != 0)
                throw InternalError("u refl components survived the B shift");
        return true;
    }

    // settled blocks: p_i o ustar = p_i; in the double variant also
    // ustar o iota_i = iota_i via a right Vc
    bool step_u_done() {
        bool changed = false;
        for (int i = 0; i < bv.n_factors(); ++i) {
            if (status[i] != kDone) continue;
            int gen = generator(i);
            if (G().element_order(comp(i, cur.ustar[gen])) != bv.orders[i])
                continue;  // the carrier step restores this next round
            std::vector<int> rho_inv(n(), -1);
            for (int c : bv.C[i].embed) rho_inv[comp(i, cur.ustar[c])] = c;
            if (dbl()) {
                bool clean = true;
                for (int c : bv.C[i].embed) clean &= cur.ustar[c] == c;
                if (!clean) {
                    std::vector<int> m(n());
                    for (int g = 0; g < n(); ++g) {
                        int c = rho_inv[comp(i, g)];
                        if (c < 0) throw InternalError("u row fix: diagonal gap");
                        m[g] = G().mul(G().mul(g, G().inv(cur.ustar[c])), c);
                    }
                    apply_right(FactorKind::Vc, make_Vc(ctx, hom(m).inverse()));
                    changed = true;
                    for (int c : bv.C[i].embed) rho_inv[comp(i, cur.ustar[c])] = c;
                }
            }
            // column: p_i(ustar(x)) must equal p_i(x)
            bool colclean = true;
            for (int x = 0; x < n() && colclean; ++x)
                colclean = comp(i, cur.ustar[x]) == comp(i, x);
            if (!colclean) {
                std::vector<int> m(n());
                for (int x = 0; x < n(); ++x) {
                    // c(x) = rho^{-1}( p_i(x) p_i(ustar(x))^{-1} )
                    int want = G().mul(comp(i, x), G().inv(comp(i, cur.ustar[x])));
                    int c = rho_inv[want];
                    if (c < 0) throw InternalError("u column fix: diagonal gap");
                    m[x] = G().mul(x, c);
                }
                apply_left(FactorKind::Vc, make_Vc(ctx, hom(m).inverse()));
                changed = true;
            }
        }
        return changed;
    }

    // H side of ustar: normalize to the identity on H inputs
    bool step_u_h() {
        if (bv.H.sub->order() == 1) return false;
        bool clean = true;
        for (int h : bv.H.embed) clean &= cur.ustar[h] == h;
        if (clean) return false;
        std::vector<int> inv_of(n(), -1);
        for (int h : bv.H.embed) {
            int img = cur.ustar[h];
            if (hcomp(img) != img) return false;  // wait until the columns cleared H mixing
            inv_of[img] = h;
        }
        for (int h : bv.H.embed)
            if (inv_of[h] < 0) throw CaseThreeReached("ustar|_H not bijective");
        if (dbl()) {
            // postcompose: ustar <- w^{-1} o ustar with w^{-1}|_H = (ustar|_H)^{-1}
            std::vector<int> m(n());
            for (int g = 0; g < n(); ++g) {
                int h = hcomp(g);
                int rest = G().mul(G().inv(h), g);
                m[g] = G().mul(inv_of[h], rest);
            }
            apply_right(FactorKind::Vc, make_Vc(ctx, hom(m).inverse()));
        } else {
            // precompose: ustar o w^{-1} with w^{-1}|_H = (ustar|_H)^{-1}
            std::vector<int> m(n());
            for (int g = 0; g < n(); ++g) {
                int h = hcomp(g);
                int rest = G().mul(G().inv(h), g);
                m[g] = G().mul(inv_of[h], rest);
            }
            apply_left(FactorKind::Vc, make_Vc(ctx, hom(m).inverse()));
        }
        return true;
    }

    // match the a pairing to the b diagonal
    bool step_a_normalize() {
        auto relems = refl_elements();
        if (relems.size() == 1) return false;
        if (cur.a.A != relems || cur.a.B != relems) return false;
        auto rv = subgroup_view(ctx.g, relems, "Crefl");
        int nc = rv.sub->order();
        auto loc = [&](int x) { return rv.local_of[x]; };
        bool match = true;
        for (int bi = 0; bi < nc && match; ++bi)
            for (int ai = 0; ai < nc && match; ++ai)
                match = (cur.a.chi_exp[bi][ai] - cur.b_exp[relems[bi]][relems[ai]]) % N() == 0;
        if (match) return false;
        if (dbl()) {
            // right Vc with v|_refl = tau, chi[b][tau(a)] = delta[b][a]
            std::vector<int> tau(nc, -1);
            for (int a = 0; a < nc; ++a) {
                for (int t = 0; t < nc; ++t) {
                    bool ok = true;
                    for (int b = 0; b < nc && ok; ++b)
                        ok = (cur.a.chi_exp[b][t] - cur.b_exp[relems[b]][relems[a]]) % N() == 0;
                    if (ok) {
                        tau[a] = t;
                        break;
                    }
                }
                if (tau[a] < 0) throw CaseThreeReached("a/b pairings are not equivalent");
            }
            std::vector<int> m(n());
            for (int g = 0; g < n(); ++g) {
                int r = refl_part(g);
                m[g] = G().mul(G().mul(g, G().inv(r)), rv.embed[tau[loc(r)]]);
            }
            apply_right(FactorKind::Vc, make_Vc(ctx, hom(m)));
        } else {
            // left Vc changing the second slot of b: delta(c)(sigma(x)) = chi[c][x]
            std::vector<int> sig(nc, -1);
            for (int x = 0; x < nc; ++x) {
                for (int s = 0; s < nc; ++s) {
                    bool ok = true;
                    for (int c = 0; c < nc && ok; ++c)
                        ok = (cur.b_exp[relems[c]][rv.embed[s]] - cur.a.chi_exp[c][x]) % N() == 0;
                    if (ok) {
                        sig[x] = s;
                        break;
                    }
                }
                if (sig[x] < 0) throw CaseThreeReached("a/b pairings are not equivalent");
            }
            std::vector<int> m(n());
            for (int g = 0; g < n(); ++g) {
                int r = refl_part(g);
                m[g] = G().mul(G().mul(g, G().inv(r)), rv.embed[sig[loc(r)]]);
            }
            apply_left(FactorKind::Vc, make_Vc(ctx, hom(m).inverse()));
        }
        return true;
    }

    bool v_plain(const AutDG& m) const {
        for (int g = 0; g < n(); ++g)
            if (m.vhom[g] != settled_part(g)) return false;
        return true;
    }

    // one-sided variant: eliminate the nilpotent twist (and any leftover
    // central extras of v) with a left E element
    bool step_nu_kill() {
        if (variant != DecompVariant::Right) return false;
        if (v_plain(cur)) return false;
        for (auto& ad : enumerate_a_data(ctx)) {
            AutDG e = make_E(ctx, ad);
            auto trial = compose(ctx, e, cur);
            if (v_plain(trial)) {
                apply_left(FactorKind::E, e);
                return true;
            }
        }
        return false;
    }

    void run() {
        for (int i = bv.n_factors() - 1; i >= 0; --i) phase_a_column(i);
        for (int round = 0; round < 10; ++round) {
            bool changed = false;
            changed |= step_u_carrier();
            changed |= step_b_residual();
            changed |= step_v_done_recheck();
            changed |= step_v_residual();
            changed |= step_a_side();
            changed |= step_u_refl();
            changed |= step_u_carrier();
            changed |= step_u_done();
            changed |= step_u_h();
            changed |= step_b_residual();
            changed |= step_a_normalize();
            changed |= step_nu_kill();
            if (!changed) break;
        }
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// decompose / verify / class

DecompositionCert decompose(const DGContext& ctx, const AutDG& phi, DecompVariant variant) {
    if (variant == DecompVariant::Left) {
        auto inv_cert = decompose(ctx, invert(ctx, phi), DecompVariant::Right);
        DecompositionCert cert;
        cert.variant = "left";
        cert.phi_key = phi.key();
        int rpos = -1;
        for (size_t i = 0; i < inv_cert.factors.size(); ++i)
            if (inv_cert.factors[i].kind == FactorKind::Reflection) rpos = (int)i;
        const AutDG& r = inv_cert.factors[rpos].elt;
        cert.factors.push_back({FactorKind::Reflection, r});
        // r^{-1} = r (r^2)^{-1} with r^2 in Vc x V
        auto r2inv = invert(ctx, compose(ctx, r, r));
        GroupHom w(ctx.g, ctx.g, r2inv.vhom);
        GroupHom um(ctx.g, ctx.g, r2inv.ustar);
        auto c = w.compose(um).inverse();  // Vc(c) V(w) = r2inv
        cert.factors.push_back({FactorKind::Vc, make_Vc(ctx, c)});
        cert.factors.push_back({FactorKind::V, make_V(ctx, w)});
        for (int i = (int)inv_cert.factors.size() - 1; i >= 0; --i) {
            if (i == rpos) continue;
            cert.factors.push_back(
                {inv_cert.factors[i].kind, invert(ctx, inv_cert.factors[i].elt)});
        }
        cert.reflection_class = inv_cert.reflection_class;
        auto v = verify_certificate(ctx, cert, phi);
        if (!v.ok) throw InternalError("left variant certificate invalid: " + v.diagnosis);
        return cert;
    }

    auto bv = build_block_view(ctx);
    Elim e(ctx, bv, phi, variant);
    e.run();
    auto rs = reflection_shape(ctx, e.cur);
    if (!rs)
        throw InternalError("elimination did not reach a reflection; state " + e.cur.key());
    if (variant == DecompVariant::Right && rs->twisted)
        throw InternalError("one-sided variant ended twisted");

    DecompositionCert cert;
    cert.variant = variant == DecompVariant::Double ? "double" : "right";
    cert.phi_key = phi.key();
    for (auto& f : e.lefts) cert.factors.push_back({f.kind, invert(ctx, f.elt)});
    cert.factors.push_back(
        {rs->twisted ? FactorKind::TwistedReflection : FactorKind::Reflection, e.cur});
    for (auto it = e.rights.rbegin(); it != e.rights.rend(); ++it)
        cert.factors.push_back({it->kind, invert(ctx, it->elt)});
    cert.reflection_class = reflection_class_of(rs->datum);
    auto v = verify_certificate(ctx, cert, phi);
    if (!v.ok) throw InternalError("certificate verification failed: " + v.diagnosis);
    return cert;
}

std::string reflection_class(const DGContext& ctx, const AutDG& phi) {
    return decompose(ctx, phi, DecompVariant::Double).reflection_class;
}

VerifyResult verify_certificate(const DGContext& ctx, const DecompositionCert& cert,
                                const AutDG& phi) {
    if (cert.factors.empty()) return {false, "empty factor list", -1};
    AutDG prod = identity_autdg(ctx);
    int nrefl = 0;
    for (size_t i = 0; i < cert.factors.size(); ++i) {
        const auto& f = cert.factors[i];
        bool member = true;
        switch (f.kind) {
            case FactorKind::V: member = is_V_element(f.elt); break;
            case FactorKind::Vc: member = is_Vc_element(f.elt); break;
            case FactorKind::B: member = is_B_element(f.elt); break;
            case FactorKind::E: member = is_E_element(f.elt); break;
            case FactorKind::Reflection:
            case FactorKind::TwistedReflection: {
                ++nrefl;
                auto rs = reflection_shape(ctx, f.elt);
                member =
                    rs.has_value() && (f.kind == FactorKind::TwistedReflection || !rs->twisted);
                break;
            }
        }
        if (!member) return {false, "factor fails its membership predicate", (int)i};
        prod = compose(ctx, prod, f.elt);
    }
    bool needs_refl = cert.variant == "double" || cert.variant == "left" ||
                      cert.variant == "right";
    if (needs_refl && nrefl != 1)
        return {false, "certificate must contain exactly one reflection", -1};
    if (!(prod == phi)) return {false, "factor product does not reproduce phi", -1};
    return {true, "", -1};
}

// ---------------------------------------------------------------------------
// Keilberg factorization

namespace {

bool purely_nonabelian(const GroupPtr& g) {
    for (auto& [h, c] : direct_factorizations(g))
        if (c.size() > 1) return false;
    return true;
}

bool map_bijective(const std::vector<int>& f) {
    std::vector<bool> seen(f.size(), false);
    for (int x : f) {
        if (seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

}  // namespace

KeilbergFactorization keilberg_factorize(const DGContext& ctx, const AutDG& phi) {
    if (!purely_nonabelian(ctx.g))
        throw NotPurelyNonabelian("exact factorization requires purely non-abelian G");
    const auto& g = *ctx.g;
    int n = ctx.n();
    int64_t N = ctx.conductor;
    if (!map_bijective(phi.ustar) || !map_bijective(phi.vhom))
        throw NotAnAutomorphism("u or v is not invertible");

    KeilbergFactorization out;
    // ---- phi = E(a0) Vc(w) V(v0) B(b0) --------------------------------------
    {
        std::vector<int> x(n);
        for (int i = 0; i < n; ++i) x[phi.ustar[i]] = i;  // x = ustar^{-1}
        std::vector<std::vector<int64_t>> b0(n, std::vector<int64_t>(n, 0));
        for (int h = 0; h < n; ++h)
            for (int z = 0; z < n; ++z) b0[h][z] = phi.b_exp[h][x[z]];
        ADatum a0;
        {
            std::vector<std::pair<int, size_t>> perm;
            for (size_t ai = 0; ai < phi.a.A.size(); ++ai) perm.emplace_back(x[phi.a.A[ai]], ai);
            std::sort(perm.begin(), perm.end());
            a0.B = phi.a.B;
            a0.chi_exp.assign(phi.a.B.size(), std::vector<int64_t>(perm.size(), 0));
            for (size_t k = 0; k < perm.size(); ++k) {
                a0.A.push_back(perm[k].first);
                for (size_t bi = 0; bi < phi.a.B.size(); ++bi)
                    a0.chi_exp[bi][k] = phi.a.chi_exp[bi][perm[k].second];
            }
        }
        std::vector<int> v0map(n);
        for (int h = 0; h < n; ++h) {
            std::vector<int64_t> va(a0.A.size());
            for (size_t ai = 0; ai < a0.A.size(); ++ai)
                va[ai] = ((b0[h][phi.ustar[a0.A[ai]]]) % N + N) % N;
            int q = -1;
            for (size_t bi = 0; bi < a0.B.size(); ++bi) {
                bool same = true;
                for (size_t ai = 0; ai < a0.A.size() && same; ++ai)
                    same = (a0.chi_exp[bi][ai] - va[ai]) % N == 0;
                if (same) {
                    q = a0.B[bi];
                    break;
                }
            }
            if (q < 0) throw InternalError("factorization: q(h) not found");
            v0map[h] = g.mul(g.inv(q), phi.vhom[h]);
        }
        GroupHom v0(ctx.g, ctx.g, v0map);
        if (!v0.is_automorphism()) throw NotAnAutomorphism("extracted v0 not bijective");
        auto w = GroupHom(ctx.g, ctx.g, x).compose(v0.inverse());
        auto e_elt = make_E(ctx, a0);
        auto vc_elt = make_Vc(ctx, w);
        auto v_elt = make_V(ctx, v0);
        auto b_elt = make_B(ctx, b0);
        auto prod = compose(ctx, compose(ctx, e_elt, vc_elt), compose(ctx, v_elt, b_elt));
        if (!(prod == phi)) throw InternalError("E-first recomposition mismatch");
        out.order_e_first = {"keilberg",
                             phi.key(),
                             {{FactorKind::E, e_elt},
                              {FactorKind::Vc, vc_elt},
                              {FactorKind::V, v_elt},
                              {FactorKind::B, b_elt}},
                             "1"};
    }
    // ---- phi = Vc(w') V(v') B(b') E(a') --------------------------------------
    {
        GroupHom v1(ctx.g, ctx.g, phi.vhom);
        if (!v1.is_automorphism()) throw NotAnAutomorphism("v not bijective");
        auto v1inv = v1.inverse();
        ADatum a1;
        {
            std::vector<std::pair<int, size_t>> perm;
            for (size_t bi = 0; bi < phi.a.B.size(); ++bi)
                perm.emplace_back(v1inv.map[phi.a.B[bi]], bi);
            std::sort(perm.begin(), perm.end());
            a1.A = phi.a.A;
            a1.chi_exp.assign(perm.size(), std::vector<int64_t>(phi.a.A.size(), 0));
            for (size_t k = 0; k < perm.size(); ++k) {
                a1.B.push_back(perm[k].first);
                a1.chi_exp[k] = phi.a.chi_exp[perm[k].second];
            }
        }
        std::vector<int> xprime_inv(n);
        for (int h = 0; h < n; ++h) {
            std::vector<int64_t> target(a1.B.size());
            for (size_t bi = 0; bi < a1.B.size(); ++bi)
                target[bi] = ((phi.b_exp[phi.vhom[a1.B[bi]]][h]) % N + N) % N;
            int y = -1;
            for (size_t ai = 0; ai < a1.A.size(); ++ai) {
                bool same = true;
                for (size_t bi = 0; bi < a1.B.size() && same; ++bi)
                    same = (a1.chi_exp[bi][ai] - target[bi]) % N == 0;
                if (same) {
                    y = a1.A[ai];
                    break;
                }
            }
            if (y < 0) throw InternalError("factorization: shift not found");
            xprime_inv[h] = g.mul(phi.ustar[h], y);
        }
        GroupHom xinv_h(ctx.g, ctx.g, xprime_inv);
        if (!xinv_h.is_automorphism()) throw NotAnAutomorphism("extracted x' not bijective");
        auto xprime = xinv_h.inverse();
        std::vector<std::vector<int64_t>> b1(n, std::vector<int64_t>(n, 0));
        for (int h = 0; h < n; ++h)
            for (int z = 0; z < n; ++z) b1[h][z] = phi.b_exp[h][xprime.map[z]];
        auto wprime = xprime.compose(v1.inverse());
        auto vc_elt = make_Vc(ctx, wprime);
        auto v_elt = make_V(ctx, v1);
        auto b_elt = make_B(ctx, b1);
        auto e_elt = make_E(ctx, a1);
        auto prod = compose(ctx, compose(ctx, vc_elt, v_elt), compose(ctx, b_elt, e_elt));
        if (!(prod == phi)) throw InternalError("E-last recomposition mismatch");
        out.order_e_last = {"keilberg_rev",
                            phi.key(),
                            {{FactorKind::Vc, vc_elt},
                             {FactorKind::V, v_elt},
                             {FactorKind::B, b_elt},
                             {FactorKind::E, e_elt}},
                            "1"};
    }
    return out;
}

// ---------------------------------------------------------------------------
// census

CensusReport census(const DGContext& ctx) {
    auto all = enumerate_all(ctx);
    std::map<std::string, int64_t> counts;
    for (auto& m : all) counts[reflection_class(ctx, m)] += 1;
    CensusReport rep;
    rep.total = (int64_t)all.size();
    for (auto& [k, v] : counts) rep.class_sizes.emplace_back(k, v);
    return rep;
}

std::vector<int64_t> weyl_census(int n) {
    int m = 2 * n;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int64_t> sizes(n + 1, 0);
    do {
        int d = 0;
        for (int i = 0; i < n; ++i)
            if (perm[i] >= n) ++d;
        sizes[d] += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sizes;
}

std::vector<int64_t> gl_census_formula(int64_t p, int n) {
    auto gl2 = [](int64_t q) { return (q * q - 1) * (q * q - q); };
    if (n == 1) return {p * p * (p - 1) * (p - 1), p * (p - 1) * (p - 1)};
    if (n == 2) {
        int64_t g = gl2(p);
        int64_t p3 = p * p * p, p4 = p3 * p, p8 = p4 * p4;
        int64_t pm1 = (p - 1) * (p - 1) * (p - 1) * (p - 1);
        return {p8 * g * g, p3 * g * g * g * g / pm1, p4 * g * g};
    }
    throw SizeLimit("GL census formula implemented for n <= 2");
}

}  // namespace dgd
