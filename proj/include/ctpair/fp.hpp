// Word-size prime fields.  Products go through unsigned __int128, so any
// modulus below 2^63 is safe.  Fp carries its modulus in a global (the
// library is single threaded); FpScope sets and restores it RAII-style, which
// keeps the generic Mat<K>/Poly<K> templates usable over F_p without
// threading a context parameter everywhere.
#pragma once

#include <cstdint>
#include <optional>

#include "ctpair/common.hpp"
#include "ctpair/rational.hpp"

namespace ctp {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}

inline uint64_t submod(uint64_t a, uint64_t b, uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

// Inverse by extended Euclid; works for any modulus as long as gcd(a,p)=1.
inline uint64_t invmod(uint64_t a, uint64_t p) {
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(p), nr = static_cast<int64_t>(a % p);
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    CTP_CHECK(r == 1, "invmod: not invertible");
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

// Legendre symbol (a|p) for odd prime p, in {-1, 0, 1}.
inline int legendre_u64(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    uint64_t e = powmod(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

// Tonelli-Shanks square root mod an odd prime.  Returns nullopt for
// non-residues.
inline std::optional<uint64_t> sqrtmod(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (legendre_u64(a, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Write p-1 = q * 2^s with q odd.
    uint64_t q = p - 1, s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    uint64_t z = 2;
    while (legendre_u64(z, p) != -1) ++z;
    uint64_t m = s;
    uint64_t c = powmod(z, q, p);
    uint64_t t = powmod(a, q, p);
    uint64_t r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        uint64_t b = c;
        for (uint64_t k = 0; k + i + 1 < m; ++k) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

// Prime-field element with a process-global modulus.
struct Fp {
    static inline uint64_t P = 0;
    uint64_t v = 0;

    Fp() = default;
    Fp(int x) {
        int64_t r = x % static_cast<int64_t>(P);
        if (r < 0) r += static_cast<int64_t>(P);
        v = static_cast<uint64_t>(r);
    }
    explicit Fp(uint64_t x) : v(x % P) {}

    static Fp from(const Int& n) {
        Fp r;
        r.v = mod_u64(n, P);
        return r;
    }
    // Reduces a rational; the denominator must be prime to P.
    static Fp from(const Rat& q) {
        uint64_t d = mod_u64(denom(q), P);
        CTP_CHECK(d != 0, "Fp::from: denominator divisible by modulus");
        Fp r;
        r.v = mulmod(mod_u64(numer(q), P), invmod(d, P), P);
        return r;
    }

    friend Fp operator+(Fp a, Fp b) { return make(addmod(a.v, b.v, P)); }
    friend Fp operator-(Fp a, Fp b) { return make(submod(a.v, b.v, P)); }
    friend Fp operator*(Fp a, Fp b) { return make(mulmod(a.v, b.v, P)); }
    friend Fp operator/(Fp a, Fp b) { return make(mulmod(a.v, invmod(b.v, P), P)); }
    Fp operator-() const { return make(v == 0 ? 0 : P - v); }
    Fp& operator+=(Fp o) { v = addmod(v, o.v, P); return *this; }
    Fp& operator-=(Fp o) { v = submod(v, o.v, P); return *this; }
    Fp& operator*=(Fp o) { v = mulmod(v, o.v, P); return *this; }
    Fp& operator/=(Fp o) { v = mulmod(v, invmod(o.v, P), P); return *this; }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

    static Fp make(uint64_t raw) {
        Fp r;
        r.v = raw;
        return r;
    }
};

struct FpScope {
    uint64_t saved;
    explicit FpScope(uint64_t p) : saved(Fp::P) { Fp::P = p; }
    ~FpScope() { Fp::P = saved; }
    FpScope(const FpScope&) = delete;
    FpScope& operator=(const FpScope&) = delete;
};

}  // namespace ctp
