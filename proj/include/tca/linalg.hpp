#pragma once
// Exact linear algebra: incremental sparse echelon forms over Q, dense solves
// over any field type, and Smith normal form over Z.

#include "arith.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tca {

// Rows are kept fully reduced against each other. Each row has a pivot at its
// largest index, so the surviving (non-pivot) coordinates prefer small indices.
template <class T>
class Echelon {
  public:
    // Reduce v against the stored rows in place.
    void reduce(SVec<T>& v) const {
        // walk from the top index down; pivots are maxima of their rows
        auto it = v.end();
        while (it != v.begin()) {
            --it;
            auto p = piv_.find(it->first);
            if (p == piv_.end()) continue;
            T c = it->second;
            int key = it->first;
            axpy(v, T(-c), rows_[p->second]);
            it = v.upper_bound(key);
        }
    }

    // Returns true if v was independent (and adds it).
    bool add(SVec<T> v) {
        reduce(v);
        if (v.empty()) return false;
        auto top = std::prev(v.end());
        int pk = top->first;
        T inv = T(1) / top->second;
        for (auto& [k, x] : v) x *= inv;
        // keep rows fully reduced
        for (auto& r : rows_) {
            auto f = r.find(pk);
            if (f != r.end()) {
                T c = f->second;
                axpy(r, T(-c), v);
            }
        }
        piv_[pk] = rows_.size();
        rows_.push_back(std::move(v));
        return true;
    }

    bool contains(SVec<T> v) const {
        reduce(v);
        return v.empty();
    }

    size_t rank() const { return rows_.size(); }
    bool is_pivot(int k) const { return piv_.count(k) > 0; }
    const std::vector<SVec<T>>& rows() const { return rows_; }

  private:
    std::vector<SVec<T>> rows_;
    std::unordered_map<int, size_t> piv_;
};

// Dense matrix helpers over a field T.
template <class T>
using Dense = std::vector<std::vector<T>>;

template <class T>
Dense<T> identity(size_t n) {
    Dense<T> m(n, std::vector<T>(n, T(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = T(1);
    return m;
}

// Inverse by Gauss-Jordan; throws if singular.
template <class T>
Dense<T> inverse(Dense<T> a) {
    size_t n = a.size();
    Dense<T> inv = identity<T>(n);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && is_zero(a[p][c])) ++p;
        if (p == n) throw std::domain_error("inverse: singular matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        T s = T(1) / a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] = a[c][j] * s;
            inv[c][j] = inv[c][j] * s;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || is_zero(a[r][c])) continue;
            T f = a[r][c];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

template <class T>
size_t rank(Dense<T> a) {
    size_t r = 0;
    size_t rows = a.size();
    if (!rows) return 0;
    size_t cols = a[0].size();
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && is_zero(a[p][c])) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (is_zero(a[i][c])) continue;
            T f = a[i][c] / a[r][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

// Smith normal form diagonal (nonzero invariant factors, divisibility order).
inline std::vector<Z> smith_invariants(std::vector<std::vector<Z>> a) {
    std::vector<Z> out;
    size_t rows = a.size();
    if (!rows) return out;
    size_t cols = a[0].size();
    size_t t = 0;
    while (t < rows && t < cols) {
        // find the smallest nonzero entry in the remaining block
        size_t pr = rows, pc = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (sgn(a[i][j]) != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (sgn(a[i][t]) == 0) continue;
                Z q = a[i][t] / a[t][t];
                for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (sgn(a[i][t]) != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (sgn(a[t][j]) == 0) continue;
                Z q = a[t][j] / a[t][t];
                for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (sgn(a[t][j]) != 0) {
                    for (auto& row : a) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility: fold in any entry the pivot does not divide
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols; ++j)
                        if (sgn(a[i][j] % a[t][t]) != 0) {
                            for (size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                            clean = false;
                            break;
                        }
            }
        }
        out.push_back(abs(a[t][t]));
        ++t;
    }
    return out;
}

}  // namespace tca
