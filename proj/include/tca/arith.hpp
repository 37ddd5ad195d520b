#pragma once
// Exact scalars: GMP rationals plus a quadratic extension Q(tau), tau^2 = c0 + c1*tau.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace tca {

using Q = mpq_class;
using Z = mpz_class;

inline bool is_zero(const Q& q) { return sgn(q) == 0; }
inline bool is_integer(const Q& q) { return q.get_den() == 1; }

inline std::string to_string(const Q& q) { return q.get_str(); }

// binom(n, k) for an arbitrary rational/integer top argument.
inline Q binom(const Q& n, long k) {
    if (k < 0) return Q(0);
    Q r(1);
    for (long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

inline Z binom_z(long n, long k) {
    if (k < 0 || (n >= 0 && k > n)) return Z(0);
    Z r;
    if (n >= 0) {
        mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
        return r;
    }
    Q q = binom(Q(n), k);
    return q.get_num();
}

inline Z factorial(long n) {
    Z r;
    mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
    return r;
}

// a + b*tau with tau^2 = c0 + c1*tau. A value with b == 0 is a plain rational and
// combines with any ring; mixing two different nonzero extensions throws.
struct QuadExt {
    Q a, b;
    int c0 = 0, c1 = 0;

    QuadExt() = default;
    QuadExt(const Q& x) : a(x) {}
    QuadExt(long x) : a(x) {}
    QuadExt(const Q& x, const Q& y, int r0, int r1) : a(x), b(y), c0(r0), c1(r1) {}

    static QuadExt sqrt2() { return QuadExt(Q(0), Q(1), 2, 0); }
    // primitive cube root of unity, omega^2 = -1 - omega
    static QuadExt omega() { return QuadExt(Q(0), Q(1), -1, -1); }

    bool rational() const { return sgn(b) == 0; }
    bool zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    bool integral() const { return rational() && is_integer(a); }

    void adopt(const QuadExt& o) {
        if (o.c0 == 0 && o.c1 == 0) return;
        if (c0 == 0 && c1 == 0) {
            c0 = o.c0;
            c1 = o.c1;
            return;
        }
        if ((c0 != o.c0 || c1 != o.c1) && !o.rational() && !rational())
            throw std::logic_error("QuadExt: mixing different extensions");
        if (rational()) {
            c0 = o.c0;
            c1 = o.c1;
        }
    }

    QuadExt& operator+=(const QuadExt& o) {
        adopt(o);
        a += o.a;
        b += o.b;
        return *this;
    }
    QuadExt& operator-=(const QuadExt& o) {
        adopt(o);
        a -= o.a;
        b -= o.b;
        return *this;
    }
    QuadExt operator-() const { return QuadExt(-a, -b, c0, c1); }
    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        QuadExt r;
        r.c0 = x.c0;
        r.c1 = x.c1;
        r.adopt(y);
        // (a + b t)(c + d t) = ac + (ad + bc) t + bd (c0 + c1 t)
        Q bd = x.b * y.b;
        r.a = x.a * y.a + bd * r.c0;
        r.b = x.a * y.b + x.b * y.a + bd * r.c1;
        return r;
    }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }

    // norm N(a + b t) = a^2 + ab c1 - b^2 c0; inverse = (a + b c1 - b t) / N
    QuadExt inverse() const {
        Q n = a * a + a * b * c1 - b * b * c0;
        if (sgn(n) == 0) throw std::domain_error("QuadExt: division by zero");
        return QuadExt((a + b * c1) / n, -b / n, c0, c1);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }

    friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    std::string str() const {
        if (rational()) return a.get_str();
        std::ostringstream os;
        const char* sym = (c0 == 2 && c1 == 0) ? "sqrt2" : (c0 == -1 && c1 == -1 ? "w" : "t");
        os << a.get_str() << (sgn(b) < 0 ? "-" : "+") << Q(abs(b)).get_str() << "*" << sym;
        return os.str();
    }
};

inline bool is_zero(const QuadExt& q) { return q.zero(); }
inline std::string to_string(const QuadExt& q) { return q.str(); }

inline QuadExt qpow(const QuadExt& x, int e) {
    QuadExt r(1);
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

// Sparse vectors keyed by basis index.
template <class T>
using SVec = std::map<int, T>;

template <class T>
void axpy(SVec<T>& y, const std::type_identity_t<T>& c, const SVec<T>& x) {
    if (is_zero(c)) return;
    for (auto& [k, v] : x) {
        auto it = y.find(k);
        if (it == y.end()) {
            T p = c * v;
            if (!is_zero(p)) y.emplace(k, std::move(p));
        } else {
            it->second += c * v;
            if (is_zero(it->second)) y.erase(it);
        }
    }
}

template <class T>
void add_term(SVec<T>& y, int k, const std::type_identity_t<T>& c) {
    if (is_zero(c)) return;
    auto it = y.find(k);
    if (it == y.end())
        y.emplace(k, c);
    else {
        it->second += c;
        if (is_zero(it->second)) y.erase(it);
    }
}

template <class T>
SVec<T> scaled(const SVec<T>& x, const std::type_identity_t<T>& c) {
    SVec<T> r;
    if (is_zero(c)) return r;
    for (auto& [k, v] : x) r.emplace(k, c * v);
    return r;
}

template <class T>
bool vec_equal(const SVec<T>& x, const SVec<T>& y) {
    if (x.size() != y.size()) return false;
    auto i = x.begin();
    auto j = y.begin();
    for (; i != x.end(); ++i, ++j)
        if (i->first != j->first || i->second != j->second) return false;
    return true;
}

inline SVec<QuadExt> lift(const SVec<Q>& x) {
    SVec<QuadExt> r;
    for (auto& [k, v] : x) r.emplace(k, QuadExt(v));
    return r;
}

}  // namespace tca
