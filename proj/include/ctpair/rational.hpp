// Exact integer and rational arithmetic on top of GMP, plus the handful of
// elementary helpers (valuations, integer square roots, floor division) the
// rest of the library leans on.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>
#include <utility>

#include "ctpair/common.hpp"

namespace ctp {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int numer(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int denom(const Rat& x) { return boost::multiprecision::denominator(x); }

inline int sgn(const Int& x) { return x.sign(); }
inline int sgn(const Rat& x) { return x.sign(); }

inline Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int igcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int ilcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Int ipow(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Floor of sqrt for nonnegative x.
inline Int isqrt(const Int& x) {
    CTP_CHECK(x >= 0, "isqrt of negative");
    return boost::multiprecision::sqrt(x);
}

// Floor of the k-th root of nonnegative x (Newton with integer ops).
inline Int iroot(const Int& x, unsigned k) {
    CTP_CHECK(x >= 0 && k >= 1, "iroot: bad arguments");
    if (x <= 1 || k == 1) return x;
    Int r = Int(1) << static_cast<unsigned>((boost::multiprecision::msb(x) / k) + 1);
    while (true) {
        Int rn = ((k - 1) * r + x / ipow(r, k - 1)) / k;
        if (rn >= r) break;
        r = rn;
    }
    while (ipow(r, k) > x) --r;
    return r;
}

inline bool is_square(const Int& x) {
    if (x < 0) return false;
    Int r = boost::multiprecision::sqrt(x);
    return r * r == x;
}

inline bool is_square(const Rat& x) {
    return x >= 0 && is_square(numer(x)) && is_square(denom(x));
}

// Exact square root of a rational known to be a perfect square.
inline Rat sqrt_exact(const Rat& x) {
    CTP_CHECK(is_square(x), "sqrt_exact: not a square");
    return Rat(isqrt(numer(x)), isqrt(denom(x)));
}

// Floor division and the matching remainder in [0, |b|).
inline Int fdiv(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

inline Int fmod(const Int& a, const Int& b) {
    Int r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

// Symmetric remainder in (-|b|/2, |b|/2].
inline Int smod(const Int& a, const Int& b) {
    Int r = fmod(a, iabs(b));
    if (2 * r > iabs(b)) r -= iabs(b);
    return r;
}

// v_p(x) for x != 0.
inline long valuation(Int x, const Int& p) {
    CTP_CHECK(x != 0, "valuation of zero");
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

inline long valuation(const Rat& x, const Int& p) {
    return valuation(numer(x), p) - valuation(denom(x), p);
}

// Split x = p^v * u and return (v, u).
inline std::pair<long, Int> split_valuation(Int x, const Int& p) {
    long v = valuation(x, p);
    return {v, x / ipow(p, static_cast<unsigned long>(v))};
}

inline uint64_t to_u64(const Int& x) { return x.convert_to<uint64_t>(); }
inline long to_long(const Int& x) { return x.convert_to<long>(); }

// Residue of x modulo a word-size p, in [0, p).
inline uint64_t mod_u64(const Int& x, uint64_t p) {
    return to_u64(fmod(x, Int(p)));
}

inline Int parse_int(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::exception&) {
        throw InvalidInput("not an integer: '" + s + "'");
    }
}

inline Rat parse_rat(const std::string& s) {
    try {
        Rat r(s);
        return r;
    } catch (const std::exception&) {
        throw InvalidInput("not a rational: '" + s + "'");
    }
}

}  // namespace ctp
