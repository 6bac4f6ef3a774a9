// Primality, factorization, CRT and rational reconstruction.
//
// Factorization is trial division over a sieve followed by Brent's variant
// of Pollard rho.  Numbers met here are either small by construction or only
// need their small prime factors extracted (factor_bounded), so rho carries
// an iteration budget instead of a completeness promise.
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "ctpair/common.hpp"
#include "ctpair/fp.hpp"
#include "ctpair/rational.hpp"

namespace ctp {

// All primes <= n.
inline std::vector<uint64_t> primes_upto(uint64_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<uint64_t> ps;
    for (uint64_t i = 2; i <= n; ++i) {
        if (!comp[i]) {
            ps.push_back(i);
            for (uint64_t j = i * i; j <= n; j += i) comp[j] = true;
        }
    }
    return ps;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    return boost::multiprecision::miller_rabin_test(n, 40);
}

namespace detail {

// Brent-cycle Pollard rho; returns a nontrivial factor or 0 on budget
// exhaustion.  n must be odd, composite, not a prime power handled upstream.
inline Int pollard_brent(const Int& n, uint64_t seed, long budget) {
    Int y = Int(seed) % n, c = Int(seed / 3 + 1) % n, m = 128;
    if (c == 0) c = 1;
    Int g = 1, r = 1, q = 1, x = 0, ys = 0;
    long steps = 0;
    while (g == 1) {
        x = y;
        for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
        Int k = 0;
        while (k < r && g == 1) {
            ys = y;
            Int lim = std::min(m, Int(r - k));
            for (Int i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = q * iabs(x - y) % n;
            }
            g = igcd(q, n);
            k += m;
            steps += static_cast<long>(lim);
            if (steps > budget) return 0;
        }
        r *= 2;
    }
    if (g == n) {
        // Backtrack one step at a time.
        do {
            ys = (ys * ys + c) % n;
            g = igcd(iabs(x - ys), n);
        } while (g == 1);
    }
    return g == n ? Int(0) : g;
}

}  // namespace detail

struct Factorization {
    std::map<Int, unsigned> primes;   // prime -> exponent
    Int cofactor = 1;                 // unfactored remainder (1 if complete)
    bool complete() const { return cofactor == 1; }
};

// Factor |n|, spending at most rho_budget squarings per rho attempt.  Small
// primes are always stripped; what rho cannot split within budget is left in
// `cofactor`.
inline Factorization factor(Int n, long rho_budget = 400000) {
    Factorization out;
    n = iabs(n);
    CTP_CHECK(n != 0, "factor(0)");
    if (n == 1) return out;
    static const std::vector<uint64_t> small = primes_upto(100000);
    for (uint64_t p : small) {
        if (Int(p) * p > n) break;
        while (n % p == 0) {
            out.primes[Int(p)]++;
            n /= p;
        }
    }
    if (n == 1) return out;
    std::vector<Int> stack{n};
    int attempts = 0;
    while (!stack.empty()) {
        Int m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime(m)) {
            out.primes[m]++;
            continue;
        }
        // Perfect powers split for free.
        bool split = false;
        unsigned maxk = boost::multiprecision::msb(m) + 1;
        for (unsigned k = 2; k <= maxk && !split; ++k) {
            Int r = iroot(m, k);
            if (r > 1 && ipow(r, k) == m) {
                for (unsigned i = 0; i < k; ++i) stack.push_back(r);
                split = true;
            }
        }
        if (split) continue;
        Int g = 0;
        for (uint64_t seed = 2; seed < 8 && g == 0; ++seed)
            g = detail::pollard_brent(m, seed * 0x9e3779b97f4a7c15ULL % 1000003 + 2, rho_budget);
        if (g == 0) {
            out.cofactor *= m;
            if (++attempts > 64) break;
            continue;
        }
        stack.push_back(g);
        stack.push_back(m / g);
    }
    return out;
}

// The distinct primes of numerator and denominator that can be found within
// budget; large unfactored cofactors are reported separately.
inline std::pair<std::vector<Int>, Int> prime_support(const Rat& x, long rho_budget = 400000) {
    CTP_CHECK(x != 0, "prime_support(0)");
    Factorization fn = factor(numer(x), rho_budget);
    Factorization fd = factor(denom(x), rho_budget);
    std::vector<Int> ps;
    for (auto& [p, e] : fn.primes) ps.push_back(p);
    for (auto& [p, e] : fd.primes)
        if (!std::count(ps.begin(), ps.end(), p)) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    return {ps, fn.cofactor * fd.cofactor};
}

// Legendre/Jacobi symbol (a|n) for odd n > 0.
inline int jacobi(Int a, Int n) {
    CTP_CHECK(n > 0 && n % 2 == 1, "jacobi: modulus must be odd positive");
    a = fmod(a, n);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a = fmod(a, n);
    }
    return n == 1 ? t : 0;
}

// x with x = r1 mod m1, x = r2 mod m2 for coprime moduli, in [0, m1*m2).
inline Int crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
    Int g, u, v;
    // Extended gcd on (m1, m2).
    {
        Int a = m1, b = m2, x0 = 1, x1 = 0;
        while (b != 0) {
            Int q = a / b;
            Int t = a - q * b;
            a = b;
            b = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        g = a;
        u = x0;
        v = 0;  // unused
        (void)v;
    }
    CTP_CHECK(g == 1 || fmod(r1, g) == fmod(r2, g), "crt: incompatible residues");
    Int m = m1 / g * m2;
    Int x = r1 + m1 * fmod((r2 - r1) / g * u, m2 / g);
    return fmod(x, m);
}

// Combine a list of (residue, modulus) pairs.
inline std::pair<Int, Int> crt(const std::vector<std::pair<Int, Int>>& parts) {
    CTP_CHECK(!parts.empty(), "crt: empty input");
    Int r = parts[0].first, m = parts[0].second;
    for (size_t i = 1; i < parts.size(); ++i) {
        r = crt_pair(r, m, parts[i].first, parts[i].second);
        m = m / igcd(m, parts[i].second) * parts[i].second;
    }
    return {r, m};
}

// Rational reconstruction: the unique n/d with |n|, d <= sqrt(m/2), d > 0,
// gcd(d, m) = 1 and n = d*a mod m, if it exists.
inline std::optional<Rat> rational_reconstruct(const Int& a, const Int& m) {
    Int bound = isqrt(m / 2);
    Int r0 = m, r1 = fmod(a, m), s0 = 0, s1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (s1 == 0 || iabs(s1) > bound) return std::nullopt;
    if (igcd(iabs(s1), m) != 1) return std::nullopt;
    Rat x(r1, s1);
    // Confirm: numerator and denominator must satisfy the congruence.
    if (fmod(numer(x) - denom(x) * a, m) != 0) return std::nullopt;
    return x;
}

}  // namespace ctp
