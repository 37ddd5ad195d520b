#pragma once
// Finite root systems from Cartan matrices: positive roots, coroots, Weyl orbits,
// Freudenthal multiplicities and the Weyl dimension formula.

#include "arith.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tca {

using IVec = std::vector<int>;
using IMat = std::vector<IVec>;

struct CartanLabel {
    char family = 'A';
    int rank = 1;

    std::string str() const { return std::string(1, family) + std::to_string(rank); }
    bool valid() const {
        switch (family) {
            case 'A': return rank >= 1;
            case 'B': return rank >= 2;
            case 'C': return rank >= 2;
            case 'D': return rank >= 4;
            case 'E': return rank >= 6 && rank <= 8;
            case 'F': return rank == 4;
            case 'G': return rank == 2;
            default: return false;
        }
    }
    static CartanLabel parse(const std::string& s) {
        if (s.size() < 2) throw std::invalid_argument("bad Cartan label: " + s);
        CartanLabel l;
        l.family = (char)std::toupper((unsigned char)s[0]);
        try {
            l.rank = std::stoi(s.substr(1));
        } catch (...) {
            throw std::invalid_argument("bad Cartan label: " + s);
        }
        if (!l.valid()) throw std::invalid_argument("invalid finite type: " + s);
        return l;
    }
};

// Cartan matrix with a_ij = alpha_j(h_i), Bourbaki numbering.
inline IMat cartan_matrix(const CartanLabel& L) {
    if (!L.valid()) throw std::invalid_argument("invalid finite type: " + L.str());
    int n = L.rank;
    IMat a(n, IVec(n, 0));
    IVec len(n, 1);  // squared length, up to scale
    std::vector<std::pair<int, int>> edges;
    auto chain = [&](int upto) {
        for (int i = 0; i + 1 < upto; ++i) edges.push_back({i, i + 1});
    };
    switch (L.family) {
        case 'A': chain(n); break;
        case 'B':
            chain(n);
            for (int i = 0; i < n - 1; ++i) len[i] = 2;
            break;
        case 'C':
            chain(n);
            len[n - 1] = 2;
            break;
        case 'D':
            chain(n - 1);
            edges.push_back({n - 3, n - 1});
            break;
        case 'E':
            edges = {{0, 2}, {1, 3}, {2, 3}};
            for (int i = 3; i + 1 < n; ++i) edges.push_back({i, i + 1});
            break;
        case 'F':
            chain(4);
            len = {2, 2, 1, 1};
            break;
        case 'G':
            chain(2);
            len = {1, 3};
            break;
    }
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    for (auto [i, j] : edges) {
        // a_ij = alpha_j(h_i) = 2(alpha_i, alpha_j)/(alpha_i, alpha_i)
        if (len[i] >= len[j]) {
            a[i][j] = -1;
            a[j][i] = -(len[i] / len[j]);
        } else {
            a[j][i] = -1;
            a[i][j] = -(len[j] / len[i]);
        }
    }
    return a;
}

struct RootSystem {
    int n = 0;
    IMat A;                       // a_ij = alpha_j(h_i)
    std::vector<Q> d;             // (alpha_i, alpha_i), long roots = 2
    std::vector<IVec> pos;        // positive roots, simple-root coordinates, ordered
    std::map<IVec, int> index;    // positive root -> position in pos
    int theta = -1;               // index of highest root
    int lacing = 1;               // r^vee
    Dense<Q> B;                   // (alpha_i, alpha_j)
    Dense<Q> Ainv;                // inverse Cartan matrix

    int height(const IVec& v) const { return std::accumulate(v.begin(), v.end(), 0); }

    // (alpha, alpha) for root coordinates
    Q norm2(const IVec& r) const {
        Q s(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (r[i] && r[j]) s += B[i][j] * r[i] * r[j];
        return s;
    }
    Q ip(const IVec& r, const IVec& s) const {
        Q t(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (r[i] && s[j]) t += B[i][j] * r[i] * s[j];
        return t;
    }
    bool is_long(const IVec& r) const { return norm2(r) == 2; }
    int rvee(const IVec& r) const { return is_long(r) ? 1 : lacing; }

    // alpha(h_i) for a root-lattice element
    IVec root_to_weight(const IVec& r) const {
        IVec w(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[i] += A[i][j] * r[j];
        return w;
    }

    // coroot h_alpha = sum_i c_i (alpha_i,alpha_i)/(alpha,alpha) h_i, integral
    IVec coroot(const IVec& r) const {
        Q nn = norm2(r);
        IVec c(n, 0);
        for (int i = 0; i < n; ++i) {
            Q x = Q(r[i]) * d[i] / nn;
            if (!is_integer(x)) throw std::logic_error("non-integral coroot");
            c[i] = (int)x.get_num().get_si();
        }
        return c;
    }

    // mu(h_alpha) for a weight in fundamental coordinates
    int pair(const IVec& mu, const IVec& r) const {
        IVec c = coroot(r);
        int s = 0;
        for (int i = 0; i < n; ++i) s += c[i] * mu[i];
        return s;
    }

    bool is_root(const IVec& r) const {
        if (index.count(r)) return true;
        IVec m(r);
        for (auto& x : m) x = -x;
        return index.count(m) > 0;
    }

    // weight (fundamental coords) -> root coordinates (rational)
    std::vector<Q> weight_to_rootq(const IVec& w) const {
        std::vector<Q> r(n, Q(0));
        // lambda = sum_j c_j alpha_j with lambda(h_i) = sum_j a_ij c_j
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) r[j] += Ainv[j][i] * w[i];
        return r;
    }
    Q wip(const IVec& u, const IVec& w) const {
        auto a = weight_to_rootq(u), b = weight_to_rootq(w);
        Q s(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += B[i][j] * a[i] * b[j];
        return s;
    }

    IVec reflect(const IVec& w, int i) const {
        IVec r(w);
        int k = w[i];
        for (int j = 0; j < n; ++j) r[j] -= k * A[j][i];
        return r;
    }

    IVec simple(int i) const {
        IVec v(n, 0);
        v[i] = 1;
        return v;
    }
};

inline bool root_order_less(const IVec& a, const IVec& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a > b;  // lexicographically descending: lower simple index first
}

inline RootSystem build_root_system(const IMat& A) {
    RootSystem R;
    R.n = (int)A.size();
    R.A = A;
    int n = R.n;
    // symmetrizer: (alpha_i,alpha_j) = d_i a_ij / 2 with d_i = (alpha_i,alpha_i)
    std::vector<Q> d(n, Q(0));
    std::vector<bool> seen(n, false);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        d[s] = 1;
        seen[s] = true;
        std::vector<int> st{s};
        while (!st.empty()) {
            int i = st.back();
            st.pop_back();
            for (int j = 0; j < n; ++j)
                if (!seen[j] && A[i][j] != 0) {
                    // d_i a_ij = d_j a_ji
                    d[j] = d[i] * A[i][j] / A[j][i];
                    seen[j] = true;
                    st.push_back(j);
                }
        }
    }
    Q mx = *std::max_element(d.begin(), d.end());
    for (auto& x : d) x = x * 2 / mx;
    R.d = d;
    R.B.assign(n, std::vector<Q>(n, Q(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.B[i][j] = d[i] * A[i][j] / 2;
    Dense<Q> Aq(n, std::vector<Q>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Aq[i][j] = A[i][j];
    R.Ainv = inverse(Aq);

    // closure by root strings: for root r and simple i, the i-string through r
    // is r - p a_i .. r + q a_i with p - q = r(h_i)
    std::set<IVec> found;
    std::vector<IVec> layer;
    for (int i = 0; i < n; ++i) {
        layer.push_back(R.simple(i));
        found.insert(R.simple(i));
    }
    while (!layer.empty()) {
        std::vector<IVec> next;
        for (auto& r : layer) {
            IVec w = R.root_to_weight(r);
            for (int i = 0; i < n; ++i) {
                int p = 0;
                IVec t(r);
                while (true) {
                    t[i] -= 1;
                    if (!found.count(t)) break;
                    ++p;
                }
                int q = p - w[i];
                if (q > 0) {
                    IVec u(r);
                    u[i] += 1;
                    if (!found.count(u)) {
                        found.insert(u);
                        next.push_back(u);
                    }
                }
            }
        }
        layer = std::move(next);
    }
    R.pos.assign(found.begin(), found.end());
    std::sort(R.pos.begin(), R.pos.end(), root_order_less);
    for (size_t k = 0; k < R.pos.size(); ++k) R.index[R.pos[k]] = (int)k;
    // highest root: the unique maximal element under dominance
    for (size_t k = 0; k < R.pos.size(); ++k) {
        bool maximal = true;
        for (int i = 0; i < n && maximal; ++i) {
            IVec u(R.pos[k]);
            u[i] += 1;
            if (found.count(u)) maximal = false;
        }
        if (maximal) {
            if (R.theta >= 0) throw std::logic_error("root system not irreducible");
            R.theta = (int)k;
        }
    }
    Q mn = *std::min_element(d.begin(), d.end());
    R.lacing = (int)Q(2 / mn).get_num().get_si();
    return R;
}

inline RootSystem build_root_system(const CartanLabel& L) { return build_root_system(cartan_matrix(L)); }

// ---------------------------------------------------------------- weights

using FiniteCharacter = std::map<IVec, long>;

inline bool dominant(const IVec& w) {
    for (int x : w)
        if (x < 0) return false;
    return true;
}

inline std::set<IVec> weyl_orbit(const RootSystem& R, const IVec& mu) {
    std::set<IVec> seen{mu};
    std::vector<IVec> st{mu};
    while (!st.empty()) {
        IVec w = st.back();
        st.pop_back();
        for (int i = 0; i < R.n; ++i) {
            if (w[i] == 0) continue;
            IVec r = R.reflect(w, i);
            if (seen.insert(r).second) st.push_back(r);
        }
    }
    return seen;
}

// dominant representative of the orbit
inline IVec to_dominant(const RootSystem& R, IVec w) {
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 0; i < R.n; ++i)
            if (w[i] < 0) {
                w = R.reflect(w, i);
                moved = true;
            }
    }
    return w;
}

inline IVec rho(const RootSystem& R) { return IVec(R.n, 1); }

inline IVec add(const IVec& a, const IVec& b, int s = 1) {
    IVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += s * b[i];
    return r;
}

// Dominant weights mu <= lambda (lambda - mu in Q^+).
inline std::vector<IVec> dominant_below(const RootSystem& R, const IVec& lam) {
    std::set<IVec> seen{lam};
    std::vector<IVec> st{lam}, out;
    while (!st.empty()) {
        IVec w = st.back();
        st.pop_back();
        out.push_back(w);
        for (auto& a : R.pos) {
            IVec u = add(w, R.root_to_weight(a), -1);
            if (dominant(u) && seen.insert(u).second) st.push_back(u);
        }
    }
    std::sort(out.begin(), out.end(), [&](const IVec& a, const IVec& b) {
        auto ra = R.weight_to_rootq(add(lam, a, -1)), rb = R.weight_to_rootq(add(lam, b, -1));
        Q ha(0), hb(0);
        for (auto& x : ra) ha += x;
        for (auto& x : rb) hb += x;
        if (ha != hb) return ha < hb;
        return a > b;
    });
    return out;
}

inline Z weyl_dimension(const RootSystem& R, const IVec& lam) {
    Q num(1), den(1);
    IVec lr = add(lam, rho(R));
    for (auto& a : R.pos) {
        num *= R.pair(lr, a);
        den *= R.pair(rho(R), a);
    }
    Q v = num / den;
    return v.get_num();
}

// Freudenthal multiplicity recursion over dominant weights.
inline FiniteCharacter weyl_character(const RootSystem& R, const IVec& lam) {
    if (!dominant(lam)) throw std::invalid_argument("weyl_character: weight is not dominant");
    auto doms = dominant_below(R, lam);
    std::map<IVec, long> mult;
    IVec lr = add(lam, rho(R));
    Q top = R.wip(lr, lr);
    auto m_of = [&](const IVec& w) -> long {
        IVec dw = to_dominant(R, w);
        auto it = mult.find(dw);
        return it == mult.end() ? 0 : it->second;
    };
    for (auto& mu : doms) {
        if (mu == lam) {
            mult[mu] = 1;
            continue;
        }
        Q s(0);
        for (auto& a : R.pos) {
            IVec aw = R.root_to_weight(a);
            IVec w = mu;
            for (int k = 1;; ++k) {
                w = add(w, aw);
                // stop once outside the convex hull (dominant rep not below lambda)
                IVec dw = to_dominant(R, w);
                if (!mult.count(dw) && !std::count(doms.begin(), doms.end(), dw)) break;
                long mm = m_of(w);
                if (mm) s += Q(mm) * R.wip(w, R.root_to_weight(a)) * 2;
                if (k > 1000) break;
            }
        }
        IVec mr = add(mu, rho(R));
        Q den = top - R.wip(mr, mr);
        Q m = s / den;
        if (!is_integer(m) || sgn(m) < 0) throw std::logic_error("Freudenthal: bad multiplicity");
        if (sgn(m)) mult[mu] = m.get_num().get_si();
    }
    FiniteCharacter ch;
    for (auto& [mu, m] : mult)
        for (auto& w : weyl_orbit(R, mu)) ch[w] = m;
    return ch;
}

// All weights of W(lambda) (the saturated set below lambda).
inline std::set<IVec> weights_of(const RootSystem& R, const IVec& lam) {
    std::set<IVec> out;
    for (auto& mu : dominant_below(R, lam))
        for (auto& w : weyl_orbit(R, mu)) out.insert(w);
    return out;
}

}  // namespace tca
