// Univariate polynomials over an exact field, ascending coefficients.
#pragma once

#include <vector>

#include "ctpair/common.hpp"
#include "ctpair/rational.hpp"

namespace ctp {

template <class K>
struct Poly {
    std::vector<K> c;  // c[i] multiplies x^i

    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { normalize(); }
    static Poly constant(const K& v) { return Poly(std::vector<K>{v}); }
    static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }

    void normalize() {
        while (!c.empty() && c.back() == K(0)) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    const K& lead() const {
        CTP_CHECK(!c.empty(), "lead of zero polynomial");
        return c.back();
    }
    K coeff(size_t i) const { return i < c.size() ? c[i] : K(0); }

    K eval(const K& x) const {
        K r(0);
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }

    friend Poly operator+(const Poly& f, const Poly& g) {
        std::vector<K> r(std::max(f.c.size(), g.c.size()), K(0));
        for (size_t i = 0; i < f.c.size(); ++i) r[i] = r[i] + f.c[i];
        for (size_t i = 0; i < g.c.size(); ++i) r[i] = r[i] + g.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& f, const Poly& g) {
        std::vector<K> r(std::max(f.c.size(), g.c.size()), K(0));
        for (size_t i = 0; i < f.c.size(); ++i) r[i] = r[i] + f.c[i];
        for (size_t i = 0; i < g.c.size(); ++i) r[i] = r[i] - g.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& f, const Poly& g) {
        if (f.is_zero() || g.is_zero()) return Poly();
        std::vector<K> r(f.c.size() + g.c.size() - 1, K(0));
        for (size_t i = 0; i < f.c.size(); ++i) {
            if (f.c[i] == K(0)) continue;
            for (size_t j = 0; j < g.c.size(); ++j) r[i + j] = r[i + j] + f.c[i] * g.c[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const K& s, const Poly& f) {
        std::vector<K> r = f.c;
        for (K& e : r) e = s * e;
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& f, const Poly& g) { return f.c == g.c; }

    Poly derivative() const {
        if (c.size() <= 1) return Poly();
        std::vector<K> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) {
            K m(0);
            for (size_t k = 0; k < i; ++k) m = m + K(1);
            r[i - 1] = m * c[i];
        }
        return Poly(std::move(r));
    }

    // f(g(x)).
    Poly compose(const Poly& g) const {
        Poly r;
        for (size_t i = c.size(); i-- > 0;) r = r * g + constant(c[i]);
        return r;
    }

    Poly monic() const {
        CTP_CHECK(!is_zero(), "monic of zero");
        K inv = K(1) / lead();
        return inv * *this;
    }
};

template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& f, const Poly<K>& g) {
    CTP_CHECK(!g.is_zero(), "division by zero polynomial");
    Poly<K> r = f, q;
    long dg = g.degree();
    if (f.degree() < dg) return {Poly<K>(), r};
    q.c.assign(f.degree() - dg + 1, K(0));
    K inv = K(1) / g.lead();
    while (!r.is_zero() && r.degree() >= dg) {
        long sh = r.degree() - dg;
        K t = r.lead() * inv;
        q.c[sh] = t;
        for (long i = 0; i <= dg; ++i)
            r.c[sh + i] = r.c[sh + i] - t * g.c[i];
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

template <class K>
Poly<K> operator%(const Poly<K>& f, const Poly<K>& g) {
    return divmod(f, g).second;
}
template <class K>
Poly<K> operator/(const Poly<K>& f, const Poly<K>& g) {
    return divmod(f, g).first;
}

// Monic gcd.
template <class K>
Poly<K> poly_gcd(Poly<K> f, Poly<K> g) {
    while (!g.is_zero()) {
        Poly<K> r = f % g;
        f = g;
        g = r;
    }
    return f.is_zero() ? f : f.monic();
}

// Resultant by the Euclidean remainder chain.
template <class K>
K resultant(Poly<K> f, Poly<K> g) {
    if (f.is_zero() || g.is_zero()) return K(0);
    K acc(1);
    bool neg = false;
    while (g.degree() > 0) {
        Poly<K> r = f % g;
        long df = f.degree(), dg = g.degree(), dr = r.is_zero() ? -1 : r.degree();
        if ((df & 1) && (dg & 1)) neg = !neg;
        // res(f,g) = (-1)^{df dg} lead(g)^{df - dr} res(g, r)
        K lg = g.lead(), pw(1);
        for (long i = 0; i < df - (dr < 0 ? 0 : dr); ++i) pw = pw * lg;
        acc = acc * pw;
        if (r.is_zero()) return K(0);
        f = g;
        g = r;
    }
    // g is a nonzero constant: res = g^{deg f}.
    K gc = g.coeff(0), pw(1);
    for (long i = 0; i < f.degree(); ++i) pw = pw * gc;
    K res = acc * pw;
    return neg ? K(0) - res : res;
}

template <class K>
K discriminant(const Poly<K>& f) {
    CTP_CHECK(f.degree() >= 1, "discriminant needs degree >= 1");
    K r = resultant(f, f.derivative());
    r = r / f.lead();
    long n = f.degree();
    if (((n * (n - 1)) / 2) & 1) r = K(0) - r;
    return r;
}

template <class K>
Poly<K> poly_from_roots(const std::vector<K>& roots, const K& lead = K(1)) {
    Poly<K> r = Poly<K>::constant(lead);
    for (const K& a : roots)
        r = r * Poly<K>(std::vector<K>{K(0) - a, K(1)});
    return r;
}

// Roots of f in F_p by scanning (callers only use word-size p).
inline std::vector<uint64_t> fp_roots_scan(const std::vector<uint64_t>& coeffs, uint64_t p) {
    std::vector<uint64_t> out;
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t acc = 0;
        for (size_t i = coeffs.size(); i-- > 0;) acc = (mulmod(acc, x, p) + coeffs[i]) % p;
        if (acc == 0) out.push_back(x);
    }
    return out;
}

}  // namespace ctp
