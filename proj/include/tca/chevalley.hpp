#pragma once
// Simple Lie algebra with a Chevalley basis: structure constants from extraspecial
// pairs, integer bracket table, normalized invariant form.

#include "rootdata.hpp"

#include <map>
#include <utility>
#include <vector>

namespace tca {

// Basis layout: x_{alpha} for positive roots (0..P-1), x_{-alpha} (P..2P-1), h_i (2P..2P+n-1).
struct ChevalleyAlgebra {
    RootSystem rs;
    int P = 0;
    int n = 0;
    int dim = 0;
    // table[a*dim+b] = integer combination of basis indices
    std::vector<std::vector<std::pair<int, int>>> table;
    std::vector<Q> form_diag;  // (e_a, e_{dual(a)}) and the h block below
    Dense<Q> hform;            // (h_i, h_j)

    int pos(int k) const { return k; }
    int neg(int k) const { return P + k; }
    int h(int i) const { return 2 * P + i; }
    bool is_h(int a) const { return a >= 2 * P; }
    bool is_root_vec(int a) const { return a < 2 * P; }
    // signed root coordinates of a root basis vector
    IVec root_of(int a) const {
        IVec r = rs.pos[a % P];
        if (a >= P)
            for (auto& x : r) x = -x;
        return r;
    }
    int root_index(const IVec& r) const {
        auto it = rs.index.find(r);
        if (it != rs.index.end()) return it->second;
        IVec m(r);
        for (auto& x : m) x = -x;
        it = rs.index.find(m);
        if (it != rs.index.end()) return P + it->second;
        return -1;
    }
    // weight of a basis vector in simple-root coordinates
    IVec weight(int a) const {
        if (is_h(a)) return IVec(n, 0);
        return root_of(a);
    }
    const std::vector<std::pair<int, int>>& br(int a, int b) const { return table[a * dim + b]; }

    template <class T>
    SVec<T> bracket(const SVec<T>& u, const SVec<T>& v) const {
        SVec<T> r;
        for (auto& [a, x] : u)
            for (auto& [b, y] : v)
                for (auto [c, k] : br(a, b)) add_term(r, c, T(x * y * T(long(k))));
        return r;
    }
    SVec<Q> bracket_basis(int a, int b) const {
        SVec<Q> r;
        for (auto [c, k] : br(a, b)) add_term(r, c, Q(k));
        return r;
    }

    // invariant form on basis vectors
    Q form(int a, int b) const {
        if (is_h(a) && is_h(b)) return hform[a - 2 * P][b - 2 * P];
        if (is_h(a) || is_h(b)) return Q(0);
        if (a < P && b == a + P) return form_diag[a];
        if (a >= P && b == a - P) return form_diag[b];
        return Q(0);
    }
    template <class T>
    T form(const SVec<T>& u, const SVec<T>& v) const {
        T s(0);
        for (auto& [a, x] : u)
            for (auto& [b, y] : v) {
                Q f = form(a, b);
                if (!is_zero(f)) s += x * y * T(f);
            }
        return s;
    }
};

namespace detail {

struct Carter {
    const RootSystem& R;
    int P;
    std::map<std::pair<int, int>, int> memo;
    // extraspecial data per non-simple positive root: (alpha, beta, p+1)
    std::vector<std::tuple<int, int, int>> extra;

    explicit Carter(const RootSystem& rs) : R(rs), P((int)rs.pos.size()) {
        extra.assign(P, {-1, -1, 0});
        for (int k = 0; k < P; ++k) {
            const IVec& xi = R.pos[k];
            if (R.height(xi) == 1) continue;
            for (int a = 0; a < P; ++a) {
                IVec b = add(xi, R.pos[a], -1);
                auto it = R.index.find(b);
                if (it == R.index.end()) continue;
                // p: largest with beta - p alpha a root
                int p = 0;
                IVec t = b;
                while (true) {
                    t = add(t, R.pos[a], -1);
                    if (!R.is_root(t)) break;
                    ++p;
                }
                extra[k] = {a, it->second, p + 1};
                break;
            }
        }
    }

    // signed root id: k >= 0 positive root k, k < 0 is -(k+1) negated
    IVec coords(int id) const {
        if (id >= 0) return R.pos[id];
        IVec r = R.pos[-id - 1];
        for (auto& x : r) x = -x;
        return r;
    }
    int id_of(const IVec& r) const {
        auto it = R.index.find(r);
        if (it != R.index.end()) return it->second;
        IVec m(r);
        for (auto& x : m) x = -x;
        it = R.index.find(m);
        if (it != R.index.end()) return -it->second - 1;
        return INT32_MIN;
    }
    static int negid(int id) { return -id - 1; }

    int N(int r, int s) {
        IVec rs = add(coords(r), coords(s));
        int sum = id_of(rs);
        if (sum == INT32_MIN) return 0;
        auto key = std::make_pair(r, s);
        auto f = memo.find(key);
        if (f != memo.end()) return f->second;
        int v = compute(r, s, sum);
        memo[key] = v;
        return v;
    }

    int compute(int r, int s, int sum) {
        if (r >= 0 && s >= 0) {
            if (r > s) return -N(s, r);
            auto [a, b, c] = extra[sum];
            if (r == a && s == b) return c;
            Q xi2 = R.norm2(coords(sum));
            Q t1(0), t2(0);
            IVec sa = add(coords(s), coords(a), -1);
            if (id_of(sa) != INT32_MIN) t1 = Q(N(s, negid(a)) * N(r, negid(b))) / R.norm2(sa);
            IVec ra = add(coords(r), coords(a), -1);
            if (id_of(ra) != INT32_MIN) t2 = Q(N(negid(a), r) * N(s, negid(b))) / R.norm2(ra);
            Q v = xi2 / c * (t1 + t2);
            if (!is_integer(v)) throw std::logic_error("Carter: non-integral constant");
            return (int)v.get_num().get_si();
        }
        if (r < 0 && s < 0) return -N(negid(r), negid(s));
        // mixed signs: r + s + u = 0
        int u = negid(sum);
        Q ru = R.norm2(coords(u));
        if (u < 0) {
            // N_{r,s}/(u,u) = N_{s,u}/(r,r); pick the version where the pair is same-signed
            if (s < 0) {
                Q v = ru / R.norm2(coords(r)) * N(s, u);
                return (int)v.get_num().get_si();
            }
            Q v = ru / R.norm2(coords(s)) * N(u, r);
            return (int)v.get_num().get_si();
        }
        if (r >= 0) {
            // u, r positive
            Q v = ru / R.norm2(coords(s)) * N(u, r);
            return (int)v.get_num().get_si();
        }
        Q v = ru / R.norm2(coords(r)) * N(s, u);
        return (int)v.get_num().get_si();
    }
};

}  // namespace detail

inline ChevalleyAlgebra build_chevalley(const RootSystem& rs) {
    ChevalleyAlgebra g;
    g.rs = rs;
    g.P = (int)rs.pos.size();
    g.n = rs.n;
    g.dim = 2 * g.P + g.n;
    int P = g.P, n = g.n, dim = g.dim;
    g.table.assign((size_t)dim * dim, {});
    detail::Carter C(rs);
    auto sid = [&](int a) { return a < P ? a : -(a - P) - 1; };
    for (int a = 0; a < 2 * P; ++a)
        for (int b = 0; b < 2 * P; ++b) {
            auto& e = g.table[a * dim + b];
            IVec ra = g.root_of(a), rb = g.root_of(b);
            IVec s = add(ra, rb);
            bool zero = std::all_of(s.begin(), s.end(), [](int x) { return x == 0; });
            if (zero) {
                // [x_alpha, x_-alpha] = h_alpha
                IVec c = rs.coroot(g.rs.pos[a % P]);
                int sg = a < P ? 1 : -1;
                for (int i = 0; i < n; ++i)
                    if (c[i]) e.push_back({g.h(i), sg * c[i]});
                continue;
            }
            int k = g.root_index(s);
            if (k < 0) continue;
            int N = C.N(sid(a), sid(b));
            if (N == 0) throw std::logic_error("Carter: zero constant on a root sum");
            e.push_back({k, N});
        }
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < 2 * P; ++a) {
            IVec w = rs.root_to_weight(g.root_of(a));
            if (w[i]) {
                g.table[g.h(i) * dim + a].push_back({a, w[i]});
                g.table[a * dim + g.h(i)].push_back({a, -w[i]});
            }
        }
    g.form_diag.resize(P);
    for (int k = 0; k < P; ++k) g.form_diag[k] = Q(2) / rs.norm2(rs.pos[k]);
    g.hform.assign(n, std::vector<Q>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.hform[i][j] = Q(2 * rs.A[i][j]) / rs.d[j];
    return g;
}

inline ChevalleyAlgebra build_chevalley(const CartanLabel& L) { return build_chevalley(build_root_system(L)); }

// Number of basis triples violating Jacobi (0 expected).
inline long jacobi_violations(const ChevalleyAlgebra& g) {
    long bad = 0;
    for (int a = 0; a < g.dim; ++a)
        for (int b = a + 1; b < g.dim; ++b) {
            SVec<Q> ab = g.bracket_basis(a, b);
            for (int c = b + 1; c < g.dim; ++c) {
                SVec<Q> ec{{c, Q(1)}}, ea{{a, Q(1)}}, eb{{b, Q(1)}};
                SVec<Q> s = g.bracket(ab, ec);
                axpy(s, Q(1), g.bracket(g.bracket_basis(b, c), ea));
                axpy(s, Q(1), g.bracket(g.bracket_basis(c, a), eb));
                if (!s.empty()) ++bad;
            }
        }
    return bad;
}

inline long form_invariance_violations(const ChevalleyAlgebra& g) {
    long bad = 0;
    for (int a = 0; a < g.dim; ++a)
        for (int b = 0; b < g.dim; ++b) {
            if (g.form(a, b) != g.form(b, a)) ++bad;
            SVec<Q> ea{{a, Q(1)}};
            SVec<Q> ab = g.bracket_basis(a, b);
            for (int c = 0; c < g.dim; ++c) {
                SVec<Q> ec{{c, Q(1)}};
                if (g.form(ea, g.bracket_basis(b, c)) != g.form(ab, ec)) ++bad;
            }
        }
    return bad;
}

}  // namespace tca
