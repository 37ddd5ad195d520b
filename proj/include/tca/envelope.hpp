#pragma once
// Universal enveloping algebra of a truncated current algebra in PBW normal form.
// Monomials use ordinary powers; divided powers are produced at the boundary.

#include "current.hpp"

#include <random>

namespace tca {

using Mono = std::vector<std::pair<int, int>>;  // (basis index, exponent), increasing index
using UElem = std::map<Mono, Q>;

inline void uadd(UElem& u, const Mono& m, const Q& c) {
    if (is_zero(c)) return;
    auto it = u.find(m);
    if (it == u.end()) {
        u.emplace(m, c);
        return;
    }
    it->second += c;
    if (is_zero(it->second)) u.erase(it);
}
inline void uaxpy(UElem& u, const Q& c, const UElem& v) {
    for (auto& [m, x] : v) uadd(u, m, c * x);
}
inline int hyperdegree(const Mono& m) {
    int s = 0;
    for (auto& [a, e] : m) s += e;
    return s;
}
inline Q mono_factorials(const Mono& m) {
    Q f(1);
    for (auto& [a, e] : m) f *= factorial(e);
    return f;
}

class Envelope {
  public:
    explicit Envelope(const TruncatedCurrentAlgebra& C) : C_(C) {}
    const TruncatedCurrentAlgebra& alg() const { return C_; }

    UElem one() const { return UElem{{Mono{}, Q(1)}}; }
    UElem gen(int a) const { return UElem{{Mono{{a, 1}}, Q(1)}}; }
    UElem lie(const SVec<Q>& v) const {
        UElem u;
        for (auto& [a, c] : v) uadd(u, Mono{{a, 1}}, c);
        return u;
    }
    // y^{(k)} = y^k / k!
    UElem divpow(int a, int k) const {
        if (k == 0) return one();
        return UElem{{Mono{{a, k}}, Q(1) / factorial(k)}};
    }

    // monomial times a single generator, normal-ordered
    const UElem& rightmul(const Mono& M, int x) {
        auto key = std::make_pair(M, x);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        UElem out;
        if (M.empty() || M.back().first < x) {
            Mono N = M;
            N.push_back({x, 1});
            out.emplace(std::move(N), Q(1));
        } else if (M.back().first == x) {
            Mono N = M;
            N.back().second += 1;
            out.emplace(std::move(N), Q(1));
        } else {
            // y^e x = sum_j C(e,j) (ad y)^j(x) y^{e-j}
            auto [y, e] = M.back();
            Mono Mp(M.begin(), M.end() - 1);
            SVec<Q> adx{{x, Q(1)}};
            SVec<Q> ey{{y, Q(1)}};
            for (int j = 0; j <= e && !adx.empty(); ++j) {
                Q bc = binom(e, j);
                for (auto& [z, c] : adx) {
                    UElem t = rightmul(Mp, z);
                    for (int q = 0; q < e - j; ++q) t = mul_gen(t, y);
                    uaxpy(out, bc * c, t);
                }
                adx = C_.bracket(ey, adx);
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

    UElem mul_gen(const UElem& u, int x) {
        UElem r;
        for (auto& [m, c] : u) uaxpy(r, c, rightmul(m, x));
        return r;
    }

    UElem mul(const UElem& a, const UElem& b) {
        UElem r;
        for (auto& [mb, cb] : b) {
            UElem t = a;
            for (auto& [x, e] : mb)
                for (int q = 0; q < e; ++q) t = mul_gen(t, x);
            uaxpy(r, cb, t);
        }
        return r;
    }

    size_t memo_size() const { return memo_.size(); }

  private:
    const TruncatedCurrentAlgebra& C_;
    std::map<std::pair<Mono, int>, UElem> memo_;
};

// Coefficients in the divided-power PBW basis.
inline UElem to_divided(const UElem& u) {
    UElem r;
    for (auto& [m, c] : u) r[m] = c * mono_factorials(m);
    return r;
}

inline std::string ustr(const TruncatedCurrentAlgebra& C, const UElem& u, bool divided = true) {
    if (u.empty()) return "0";
    std::string s;
    for (auto& [m, c0] : u) {
        Q c = divided ? c0 * mono_factorials(m) : c0;
        if (!s.empty()) s += " + ";
        s += c.get_str();
        for (auto& [a, e] : m) {
            s += "*" + C.name(a);
            if (e > 1) s += (divided ? "^(" : "^") + std::to_string(e) + (divided ? ")" : "");
        }
    }
    return s;
}

// ---------------------------------------------------------------- series in u

using Series = std::vector<UElem>;  // coefficient of u^k at index k

inline Series series_mul(Envelope& U, const Series& a, const Series& b, int N) {
    Series r(N + 1);
    for (int i = 0; i <= N && i < (int)a.size(); ++i) {
        if (a[i].empty()) continue;
        for (int j = 0; i + j <= N && j < (int)b.size(); ++j) {
            if (b[j].empty()) continue;
            uaxpy(r[i + j], Q(1), U.mul(a[i], b[j]));
        }
    }
    return r;
}

// X^{(j)} = X^j / j!, truncated at u^N
inline Series series_divpow(Envelope& U, const Series& X, int j, int N) {
    Series r(N + 1);
    r[0] = U.one();
    for (int q = 0; q < j; ++q) r = series_mul(U, r, X, N);
    Q f = Q(1) / factorial(j);
    for (auto& c : r)
        for (auto& [m, x] : c) x *= f;
    return r;
}

// exp(-sum_n s_n u^n) up to u^N, s_n given as Lie elements (all Cartan, so they commute)
inline Series exp_series(Envelope& U, const std::vector<SVec<Q>>& s, int N) {
    Series L(N + 1);
    L[0] = U.one();
    for (int r = 1; r <= N; ++r)
        for (int n = 1; n <= r && n < (int)s.size(); ++n) {
            if (s[n].empty() || L[r - n].empty()) continue;
            uaxpy(L[r], Q(-n) / Q(r), U.mul(U.lie(s[n]), L[r - n]));
        }
    return L;
}

// Lambda^sigma_mu(u) up to u^N.
// short (and every A2n root): exp(-sum_n h_{mu,-n} t^n u^n / n)
// long otherwise: exp(-sum_k h_{mu,0} t^{mk} u^k / k)
inline Series lambda_series(Envelope& U, const IVec& mu, int N) {
    const auto& C = U.alg();
    const auto& F = *C.F;
    if (F.in_2Rsh(mu)) throw std::invalid_argument("lambda_series: mu must be in R0");
    bool shortlike = F.a2n || F.is_short(mu);
    std::vector<SVec<Q>> s(N + 1);
    for (int n = 1; n <= N; ++n) {
        SVec<QuadExt> hv;
        int deg;
        if (shortlike) {
            hv = F.h_mu(mu, -n);
            deg = n;
        } else {
            hv = F.h_mu(mu, 0);
            deg = F.m * n;
        }
        if (deg >= C.D && !hv.empty()) throw std::invalid_argument("lambda_series: r_max reaches the cutoff");
        s[n] = scaled(C.at_degree(hv, deg), Q(1) / Q(n));
    }
    return exp_series(U, s, N);
}

// untwisted Lambda_{alpha;k}(u) = exp(-sum_s h_alpha t^{sk} u^s / s) on a sigma = id algebra
inline Series lambda_series_untwisted(Envelope& U, const IVec& alpha, int k, int N) {
    const auto& C = U.alg();
    if (C.F->m != 1) throw std::invalid_argument("lambda_series_untwisted: needs sigma = id");
    std::vector<SVec<Q>> s(N + 1);
    for (int n = 1; n <= N; ++n) {
        if (k * n >= C.D) throw std::invalid_argument("lambda_series_untwisted: r_max reaches the cutoff");
        s[n] = scaled(C.at_degree(C.F->h_mu(alpha, 0), k * n), Q(1) / Q(n));
    }
    return exp_series(U, s, N);
}

// apply u to a highest-weight vector of weight lam (fundamental coordinates):
// raising factors and positive-degree Cartan factors kill it, h_{i,0} acts by lam_i
inline UElem lambda_project(const TruncatedCurrentAlgebra& C, const UElem& u, const IVec& lam) {
    UElem r;
    for (auto& [m, c] : u) {
        Q k = c;
        Mono low;
        for (auto& [a, e] : m) {
            auto& el = C.el[a];
            if (el.kind == Kind::xp || (el.kind == Kind::h && el.r > 0)) {
                k = 0;
                break;
            }
            if (el.kind == Kind::h) {
                Q v = lam[C.F->el[el.f].node];
                for (int q = 0; q < e; ++q) k *= v;
            } else {
                low.push_back({a, e});
            }
        }
        uadd(r, low, k);
    }
    return r;
}

// ---------------------------------------------------------------- the involution psi

// psi(x_{alpha_i}) = x_{-alpha_i}, psi(h_i) = -h_i, extended to g by height induction
inline std::vector<SVec<Q>> psi_ambient(const ChevalleyAlgebra& g) {
    std::vector<SVec<Q>> psi(g.dim);
    for (int i = 0; i < g.n; ++i) psi[g.h(i)] = {{g.h(i), Q(-1)}};
    std::vector<int> order(g.P);
    for (int k = 0; k < g.P; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.rs.height(g.rs.pos[a]) < g.rs.height(g.rs.pos[b]); });
    for (int k : order) {
        if (g.rs.height(g.rs.pos[k]) == 1) {
            psi[g.pos(k)] = {{g.neg(k), Q(1)}};
            psi[g.neg(k)] = {{g.pos(k), Q(1)}};
            continue;
        }
        for (int i = 0; i < g.n; ++i) {
            int si = g.rs.index.at(g.rs.simple(i));
            IVec rest = add(g.rs.pos[k], g.rs.pos[si], -1);
            auto it = g.rs.index.find(rest);
            if (it == g.rs.index.end()) continue;
            int gam = it->second;
            for (int sg : {0, 1}) {
                int a = sg ? g.neg(si) : g.pos(si), b = sg ? g.neg(gam) : g.pos(gam);
                int tgt = sg ? g.neg(k) : g.pos(k);
                auto br = g.bracket_basis(a, b);
                Q N = br.at(tgt);
                psi[tgt] = scaled(g.bracket(psi[a], psi[b]), Q(1) / N);
            }
            break;
        }
    }
    return psi;
}

// psi on the folded basis (each image is a multiple of a single folded element)
inline std::vector<std::pair<int, Q>> psi_folded(const FoldedAlgebra& F) {
    auto pa = psi_ambient(F.g);
    std::vector<std::pair<int, Q>> out(F.dim);
    for (int a = 0; a < F.dim; ++a) {
        SVec<QuadExt> img;
        for (auto& [b, c] : F.el[a].vec)
            for (auto& [d, k] : pa[b]) add_term(img, d, c * QuadExt(k));
        auto dec = F.decompose(img);
        if (dec.size() != 1 || !dec.begin()->second.rational())
            throw std::logic_error("psi_folded: image is not a rational multiple of a basis vector");
        out[a] = {dec.begin()->first, dec.begin()->second.a};
    }
    return out;
}

inline std::vector<std::pair<int, Q>> psi_current(const TruncatedCurrentAlgebra& C) {
    auto pf = psi_folded(*C.F);
    std::vector<std::pair<int, Q>> out(C.dim);
    for (int a = 0; a < C.dim; ++a) {
        auto [f, c] = pf[C.el[a].f];
        out[a] = {C.find(f, C.el[a].r), c};
    }
    return out;
}

inline UElem psi_apply(Envelope& U, const std::vector<std::pair<int, Q>>& psi, const UElem& u) {
    UElem r;
    for (auto& [m, c] : u) {
        UElem t = U.one();
        Q k = c;
        for (auto& [a, e] : m)
            for (int q = 0; q < e; ++q) {
                t = U.mul_gen(t, psi[a].first);
                k *= psi[a].second;
            }
        uaxpy(r, k, t);
    }
    return r;
}

// ---------------------------------------------------------------- ideal membership

// U^+ = U(n^-)U(h_+)^0 + U U(n^+)^0: in normal form, every monomial must carry a
// raising factor or a Cartan factor of positive degree
inline bool in_positive_ideal(const TruncatedCurrentAlgebra& C, const UElem& u) {
    for (auto& [m, c] : u) {
        bool ok = false;
        for (auto& [a, e] : m) {
            auto& el = C.el[a];
            if (el.kind == Kind::xp || (el.kind == Kind::h && el.r > 0)) ok = true;
        }
        if (!ok) return false;
    }
    return true;
}

// part of u outside U^+ (the residue that must vanish)
inline UElem residue_mod_positive(const TruncatedCurrentAlgebra& C, const UElem& u) {
    UElem r;
    for (auto& [m, c] : u) {
        bool in = false;
        for (auto& [a, e] : m) {
            auto& el = C.el[a];
            if (el.kind == Kind::xp || (el.kind == Kind::h && el.r > 0)) in = true;
        }
        if (!in) r[m] = c;
    }
    return r;
}

}  // namespace tca
