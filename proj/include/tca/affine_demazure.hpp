#pragma once
// Twisted affine root data over a folded algebra, alcove walks to the dominant
// chamber, Demazure operators on formal characters, and specialization to
// graded g0-characters.

#include "folding.hpp"

#include <memory>
#include <optional>
#include <random>

namespace tca {

struct AffineWeight {
    int level = 0;
    IVec fin;  // g0 fundamental coordinates
    int delta = 0;
    bool operator<(const AffineWeight& o) const {
        return std::tie(level, fin, delta) < std::tie(o.level, o.fin, o.delta);
    }
    bool operator==(const AffineWeight& o) const {
        return level == o.level && fin == o.fin && delta == o.delta;
    }
};

using AffineCharacter = std::map<AffineWeight, long>;
using GradedCharacter = std::map<std::pair<IVec, int>, long>;  // (g0 weight, grade) -> mult

inline std::string awstr(const AffineWeight& w) {
    return std::to_string(w.level) + "L0 + " + vstr(w.fin) + " + " + std::to_string(w.delta) + "d";
}

struct AffineRootData {
    std::shared_ptr<const FoldedAlgebra> F;
    int n0 = 0;
    IMat A0;
    IMat Ahat;            // index 0 is the affine node, i >= 1 is g0 node i-1
    std::vector<Q> hth;   // h_{theta1,0} in the basis h_{i,0}
    Q kappa_theta;        // (x^+_{theta1,1}, x^-_{theta1,-1})
    Q c_level;            // Lambda_0(c) = a0 / m
    IVec marks;           // delta = sum marks_i alpha_i
    std::vector<Q> comarks;  // c = sum comarks_i h_i

    Q eval_c(const AffineWeight& L) const {
        Q v(0);
        for (int i = 0; i <= n0; ++i) v += comarks[i] * pair(L, i);
        return v;
    }

    // root coordinates of g0 -> fundamental coordinates
    IVec root_weight(const IVec& r) const {
        IVec w(n0, 0);
        for (int i = 0; i < n0; ++i)
            for (int k = 0; k < n0; ++k) w[i] += A0[i][k] * r[k];
        return w;
    }
    int pair(const AffineWeight& L, int i) const {
        if (i > 0) return L.fin[i - 1];
        Q v(L.level);
        for (int j = 0; j < n0; ++j) v -= hth[j] * L.fin[j];
        if (!is_integer(v)) throw std::logic_error("affine pairing with h_0 is not integral");
        return (int)v.get_num().get_si();
    }
    AffineWeight simple_root(int i) const {
        AffineWeight a{0, IVec(n0, 0), 0};
        if (i > 0) {
            for (int j = 0; j < n0; ++j) a.fin[j] = A0[j][i - 1];
        } else {
            IVec t = root_weight(F->theta1);
            for (int j = 0; j < n0; ++j) a.fin[j] = -t[j];
            a.delta = 1;
        }
        return a;
    }
    AffineWeight shift(const AffineWeight& L, const AffineWeight& a, int k) const {
        AffineWeight r = L;
        r.level += k * a.level;
        for (int j = 0; j < n0; ++j) r.fin[j] += k * a.fin[j];
        r.delta += k * a.delta;
        return r;
    }
    AffineWeight reflect(const AffineWeight& L, int i) const { return shift(L, simple_root(i), -pair(L, i)); }
    bool dominant(const AffineWeight& L) const {
        for (int i = 0; i <= n0; ++i)
            if (pair(L, i) < 0) return false;
        return true;
    }
};

// (x^+_{alpha,eps}, x^-_{alpha,-eps}) from the ambient invariant form
inline Q root_kappa(const FoldedAlgebra& F, const IVec& alpha) {
    for (int e = 0; e < F.m; ++e) {
        int a = F.x(Kind::xp, alpha, e), b = F.x(Kind::xm, alpha, -e);
        if (a < 0 || b < 0) continue;
        QuadExt k = F.g.form(F.el[a].vec, F.el[b].vec);
        if (!k.rational()) throw std::logic_error("root_kappa: irrational");
        return k.a;
    }
    throw std::invalid_argument("root_kappa: not a restricted root");
}

// coefficients of an ambient Cartan vector in the basis h_{i,0}
inline std::vector<Q> h0_coords(const FoldedAlgebra& F, const SVec<QuadExt>& hv) {
    std::vector<Q> c(F.n0(), Q(0));
    for (auto& [f, x] : F.decompose(hv)) {
        auto& e = F.el[f];
        if (e.kind != Kind::h || e.eps != 0 || !x.rational()) throw std::logic_error("h0_coords: not in h0");
        c[e.node] = x.a;
    }
    return c;
}

// ambient vector of the paper's h_{alpha,0}, including fixed roots of A2n
inline SVec<QuadExt> h_alpha0(const FoldedAlgebra& F, const IVec& alpha) {
    for (size_t q = 0; q < F.orbits.size(); ++q)
        if (F.restrict_root(F.g.rs.pos[F.orbits[q][0]]) == alpha) return F.h_orbit_vec((int)q, 0);
    throw std::invalid_argument("h_alpha0: not a restricted root");
}

inline AffineRootData build_affine_data(std::shared_ptr<const FoldedAlgebra> F) {
    AffineRootData D;
    D.F = F;
    D.n0 = F->n0();
    D.A0 = F->A0;
    D.hth = h0_coords(*F, h_alpha0(*F, F->theta1));
    D.kappa_theta = root_kappa(*F, F->theta1);
    D.c_level = Q(F->a0) / Q(F->m);
    int n = D.n0;
    D.marks.assign(1, 1);
    for (int x : F->theta1) D.marks.push_back(x);
    D.comarks.assign(1, D.c_level);
    for (auto& x : D.hth) D.comarks.push_back(D.c_level * x);
    D.Ahat.assign(n + 1, IVec(n + 1, 0));
    IVec th = D.root_weight(F->theta1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D.Ahat[i + 1][j + 1] = D.A0[i][j];
    Q t0(0);
    for (int j = 0; j < n; ++j) t0 += D.hth[j] * th[j];
    D.Ahat[0][0] = (int)t0.get_num().get_si();
    for (int j = 0; j < n; ++j) {
        // alpha_j(h_0) = -alpha_j(h_theta1), alpha_0(h_i) = -theta1(h_i)
        Q v(0);
        for (int i = 0; i < n; ++i) v += D.hth[i] * D.A0[i][j];
        if (!is_integer(v)) throw std::logic_error("affine Cartan matrix not integral");
        D.Ahat[0][j + 1] = -(int)v.get_num().get_si();
        D.Ahat[j + 1][0] = -th[j];
    }
    return D;
}

struct AlcoveWalk {
    AffineWeight dominant;  // delta coefficient normalized to 0
    std::vector<int> word;  // s_{w0} ... s_{wk} dominant = start + n delta
    int n = 0;
};

inline AlcoveWalk to_dominant_with_word(const AffineRootData& D, int level, const IVec& lam) {
    if (level < 0) throw std::invalid_argument("to_dominant_with_word: negative level");
    if (level == 0 && std::any_of(lam.begin(), lam.end(), [](int x) { return x != 0; }))
        throw std::invalid_argument("to_dominant_with_word: level 0 has no dominant representative");
    AffineWeight mu{level, IVec(D.n0), 0};
    for (int j = 0; j < D.n0; ++j) mu.fin[j] = -lam[j];
    AlcoveWalk w;
    AffineWeight cur = mu;
    for (int guard = 0; guard < 100000; ++guard) {
        int i = -1;
        for (int k = 0; k <= D.n0; ++k)
            if (D.pair(cur, k) < 0) {
                i = k;
                break;
            }
        if (i < 0) {
            w.n = -cur.delta;
            cur.delta = 0;
            w.dominant = cur;
            return w;
        }
        cur = D.reflect(cur, i);
        w.word.push_back(i);
    }
    throw std::logic_error("to_dominant_with_word: walk did not terminate");
}

inline void char_add(AffineCharacter& ch, const AffineWeight& w, long c) {
    if (!c) return;
    auto it = ch.find(w);
    if (it == ch.end()) {
        ch.emplace(w, c);
        return;
    }
    it->second += c;
    if (!it->second) ch.erase(it);
}

inline AffineCharacter demazure_op(const AffineRootData& D, int i, const AffineCharacter& ch) {
    AffineCharacter out;
    AffineWeight a = D.simple_root(i);
    for (auto& [mu, c] : ch) {
        int k = D.pair(mu, i);
        if (k >= 0)
            for (int j = 0; j <= k; ++j) char_add(out, D.shift(mu, a, -j), c);
        else
            for (int j = 1; j <= -k - 1; ++j) char_add(out, D.shift(mu, a, j), -c);
    }
    return out;
}

inline AffineCharacter demazure_character(const AffineRootData& D, const AffineWeight& L,
                                          const std::vector<int>& word) {
    if (!D.dominant(L)) throw std::invalid_argument("demazure_character: weight is not dominant");
    AffineCharacter ch{{L, 1}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) ch = demazure_op(D, *it, ch);
    return ch;
}

// (g0 weight, grade) with the cyclic weight lam at grade 0: finite part negated,
// grade = delta coefficient - n
inline GradedCharacter specialize_graded(const AffineCharacter& ch, int n) {
    GradedCharacter g;
    for (auto& [w, c] : ch) {
        IVec f = w.fin;
        for (auto& x : f) x = -x;
        int gr = w.delta - n;
        if (gr < 0 || c < 0) throw std::logic_error("specialize_graded: negative grade or multiplicity");
        g[{f, gr}] += c;
    }
    return g;
}

inline GradedCharacter demazure_oracle(const AffineRootData& D, int level, const IVec& lam) {
    auto w = to_dominant_with_word(D, level, lam);
    return specialize_graded(demazure_character(D, w.dominant, w.word), w.n);
}

inline long char_dim(const GradedCharacter& g) {
    long s = 0;
    for (auto& [k, c] : g) s += c;
    return s;
}

// ---------------------------------------------------------------- r-hat and the coroot display

// per-degree coefficient of the level in w Lambda(h_gamma): kappa(alpha) Lambda_0(c)
inline Q rhat_effective(const FoldedAlgebra& F, const IVec& alpha) {
    return root_kappa(F, alpha) * Q(F.a0) / Q(F.m);
}

// m r^vee_alpha / a0 with r^vee_alpha = 2/(alpha,alpha) from the ambient form
inline Q rhat_printed(const FoldedAlgebra& F, const IVec& alpha) {
    auto hv = h_alpha0(F, alpha);
    QuadExt n2 = F.g.form(hv, hv);
    // (alpha,alpha) = 4 / (h_alpha, h_alpha)
    Q rv = n2.a / Q(2);
    return Q(F.m) * rv / Q(F.a0);
}

// h_gamma for gamma = sign*alpha + s delta: finite part in the basis h_{i,0} and the
// coefficient of the level in w Lambda(h_gamma); nullopt if the root vectors are absent
struct CorootValue {
    std::vector<Q> fin;
    Q level;
};

inline std::optional<CorootValue> coroot_value(const AffineRootData& D, const IVec& alpha, int s, int sign) {
    const auto& F = *D.F;
    int xa = F.x(sign > 0 ? Kind::xp : Kind::xm, alpha, -s);
    int xb = F.x(sign > 0 ? Kind::xm : Kind::xp, alpha, s);
    if (xa < 0 || xb < 0) return std::nullopt;
    CorootValue v;
    v.fin = h0_coords(F, F.g.bracket(F.el[xa].vec, F.el[xb].vec));
    QuadExt kf = F.g.form(F.el[xa].vec, F.el[xb].vec);
    if (!kf.rational()) throw std::logic_error("coroot_value: irrational form value");
    v.level = Q(s) * kf.a * D.c_level;
    return v;
}

// Demazure bound: (x^-_{alpha,-s} t^s)^{(k)} v = 0 for k > max(0, bound), read off
// -w Lambda(h_{alpha + s delta}) with w Lambda = l Lambda_0 - lambda
inline Q demazure_bound(const AffineRootData& D, const IVec& lam, int level, const IVec& alpha, int s) {
    auto cv = coroot_value(D, alpha, s, 1);
    if (!cv) throw std::invalid_argument("demazure_bound: no root vector at this degree");
    Q b = -Q(level) * cv->level;
    for (int j = 0; j < D.n0; ++j) b += cv->fin[j] * lam[j];
    return b;
}

inline std::vector<CheckEntry> verify_coroot_display(const AffineRootData& D, int smax) {
    const auto& F = *D.F;
    std::vector<CheckEntry> out;
    std::set<IVec> roots;
    for (auto& R : F.Rpos) roots.insert(R.begin(), R.end());
    out.push_back({"h_0 normalization: kappa(theta1) = m/a0", D.kappa_theta == Q(F.m) / Q(F.a0),
                   "kappa(theta1)=" + D.kappa_theta.get_str()});
    for (auto& alpha : roots)
        for (int s = 0; s <= smax; ++s)
            for (int sg : {1, -1}) {
                auto cv = coroot_value(D, alpha, s, sg);
                if (!cv) continue;
                // displayed: -+ lam(h_{alpha,0}) + s l rhat, or delta_{s,1} h_{alpha/2,0} on 2R_sh
                std::vector<Q> want(D.n0, Q(0));
                bool half = F.in_2Rsh(alpha);
                if (!half || s == 1) {
                    auto hc = h0_coords(F, h_alpha0(F, half ? F.half(alpha) : alpha));
                    for (int j = 0; j < D.n0; ++j) want[j] = Q(sg) * hc[j];
                }
                Q wl = Q(s) * rhat_printed(F, alpha);
                bool ok = wl == cv->level && want == cv->fin;
                std::string fs, ws;
                for (int j = 0; j < D.n0; ++j) {
                    fs += (j ? "," : "") + cv->fin[j].get_str();
                    ws += (j ? "," : "") + want[j].get_str();
                }
                out.push_back({"coroot display", ok,
                               std::string(sg > 0 ? "+" : "-") + vstr(alpha) + " + " + std::to_string(s) +
                                   "d: computed h=(" + fs + ") l-coeff=" + cv->level.get_str() + "; displayed h=(" +
                                   ws + ") l-coeff=" + wl.get_str()});
            }
    return out;
}

// ---------------------------------------------------------------- operator properties

inline AffineCharacter random_character(const AffineRootData& D, std::mt19937& rng, int level) {
    AffineCharacter ch;
    int terms = 1 + rng() % 4;
    for (int t = 0; t < terms; ++t) {
        AffineWeight w{level, IVec(D.n0), (int)(rng() % 3)};
        for (auto& x : w.fin) x = (int)(rng() % 7) - 3;
        char_add(ch, w, (long)(rng() % 5) - 2);
    }
    return ch;
}

// pairs of words related by braid moves (each of the same Weyl group element)
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> braid_pairs(const AffineRootData& D) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    int n = D.n0 + 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int p = D.Ahat[i][j] * D.Ahat[j][i];
            int len = p == 0 ? 2 : p == 1 ? 3 : p == 2 ? 4 : p == 3 ? 6 : 0;
            if (!len) continue;
            std::vector<int> a, b;
            for (int k = 0; k < len; ++k) {
                a.push_back(k % 2 ? j : i);
                b.push_back(k % 2 ? i : j);
            }
            out.push_back({a, b});
        }
    return out;
}

}  // namespace tca
