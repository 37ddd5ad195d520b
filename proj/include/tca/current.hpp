#pragma once
// Twisted current algebra g[t]^sigma truncated below t-degree D.

#include "folding.hpp"

#include <memory>

namespace tca {

struct CurrentElem {
    int f;      // folded basis index
    int r;      // t-degree
    Kind kind;
    IVec wt;    // g0 weight, root coordinates
};

struct TruncatedCurrentAlgebra {
    std::shared_ptr<const FoldedAlgebra> F;
    int D = 1;
    std::vector<CurrentElem> el;
    std::map<std::pair<int, int>, int> id;  // (folded index, degree) -> element
    std::vector<std::vector<std::pair<int, Q>>> table;
    int dim = 0;

    int find(int f, int r) const {
        auto it = id.find({f, r});
        return it == id.end() ? -1 : it->second;
    }
    // x^{+-}_{mu, -r} (x) t^r, or -1 if zero / truncated
    int x(Kind k, const IVec& mu, int r) const {
        if (r >= D || r < 0) return -1;
        int f = F->x(k, mu, -r);
        return f < 0 ? -1 : find(f, r);
    }
    int h(int i, int r) const {
        if (r >= D || r < 0) return -1;
        int f = F->h(i, -r);
        return f < 0 ? -1 : find(f, r);
    }
    const std::vector<std::pair<int, Q>>& br(int a, int b) const { return table[(size_t)a * dim + b]; }
    bool lowering(int a) const { return el[a].kind == Kind::xm; }

    SVec<Q> bracket(const SVec<Q>& u, const SVec<Q>& v) const {
        SVec<Q> r;
        for (auto& [a, x] : u)
            for (auto& [b, y] : v)
                for (auto& [c, k] : br(a, b)) add_term(r, c, Q(x * y * k));
        return r;
    }

    // folded-coordinate vector at a fixed degree -> current coordinates (drops truncated part)
    SVec<Q> at_degree(const SVec<QuadExt>& folded, int r) const {
        SVec<Q> out;
        if (r >= D) return out;
        for (auto& [f, c] : folded) {
            if (!c.rational()) throw std::logic_error("at_degree: irrational coefficient");
            int a = find(f, r);
            if (a < 0) throw std::logic_error("at_degree: label does not match degree");
            add_term(out, a, c.a);
        }
        return out;
    }

    std::string name(int a) const {
        auto& e = el[a];
        auto& fe = F->el[e.f];
        std::string s = kind_name(e.kind);
        if (e.kind == Kind::h)
            s += "[" + std::to_string(fe.node) + "]";
        else
            s += vstr(fe.mu);
        return s + "t^" + std::to_string(e.r);
    }
};

inline int height_of(const IVec& v) {
    int h = 0;
    for (int x : v) h += x < 0 ? -x : x;
    return h;
}

inline TruncatedCurrentAlgebra build_truncated(std::shared_ptr<const FoldedAlgebra> F, int D) {
    if (D <= 0) throw std::invalid_argument("build_truncated: cutoff must be positive");
    TruncatedCurrentAlgebra C;
    C.F = F;
    C.D = D;
    for (int r = 0; r < D; ++r)
        for (int f = 0; f < F->dim; ++f) {
            if (F->eps_norm(F->el[f].eps + r) != 0) continue;
            C.el.push_back({f, r, F->el[f].kind, F->el[f].mu});
        }
    // x- < h < x+, then t-degree, then height, then label
    std::stable_sort(C.el.begin(), C.el.end(), [&](const CurrentElem& a, const CurrentElem& b) {
        if (a.kind != b.kind) return (int)a.kind < (int)b.kind;
        if (a.r != b.r) return a.r < b.r;
        int ha = height_of(a.wt), hb = height_of(b.wt);
        if (ha != hb) return ha < hb;
        return a.f < b.f;
    });
    C.dim = (int)C.el.size();
    for (int a = 0; a < C.dim; ++a) C.id[{C.el[a].f, C.el[a].r}] = a;
    C.table.assign((size_t)C.dim * C.dim, {});
    for (int a = 0; a < C.dim; ++a)
        for (int b = 0; b < C.dim; ++b) {
            int r = C.el[a].r + C.el[b].r;
            if (r >= D) continue;
            for (auto& [c, k] : F->br(C.el[a].f, C.el[b].f)) {
                int e = C.find(c, r);
                if (e < 0) throw std::logic_error("build_truncated: bracket leaves the algebra");
                C.table[(size_t)a * C.dim + b].push_back({e, k});
            }
        }
    return C;
}

inline TruncatedCurrentAlgebra build_truncated(const FoldedAlgebra& F, int D) {
    return build_truncated(std::make_shared<const FoldedAlgebra>(F), D);
}

inline long current_jacobi_violations(const TruncatedCurrentAlgebra& C) {
    long bad = 0;
    for (int a = 0; a < C.dim; ++a)
        for (int b = a + 1; b < C.dim; ++b)
            for (int c = b + 1; c < C.dim; ++c) {
                if (C.el[a].r + C.el[b].r + C.el[c].r >= C.D) continue;
                SVec<Q> ea{{a, Q(1)}}, eb{{b, Q(1)}}, ec{{c, Q(1)}};
                SVec<Q> s = C.bracket(C.bracket(ea, eb), ec);
                axpy(s, Q(1), C.bracket(C.bracket(eb, ec), ea));
                axpy(s, Q(1), C.bracket(C.bracket(ec, ea), eb));
                if (!s.empty()) ++bad;
            }
    return bad;
}

}  // namespace tca
