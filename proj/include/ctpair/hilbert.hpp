// Places of Q and the Hilbert symbol (a,b)_v in {-1,+1}.
#pragma once

#include <compare>
#include <string>

#include "ctpair/factor.hpp"
#include "ctpair/rational.hpp"

namespace ctp {

// A place of Q: the archimedean place or a finite prime.
struct Place {
    bool infinite = false;
    Int p = 0;

    static Place inf() { return Place{true, 0}; }
    static Place finite(Int prime) { return Place{false, std::move(prime)}; }

    // Reports list the archimedean place first, then primes in order.
    friend bool operator<(const Place& a, const Place& b) {
        if (a.infinite != b.infinite) return a.infinite;
        return a.p < b.p;
    }
    friend bool operator==(const Place& a, const Place& b) {
        return a.infinite == b.infinite && (a.infinite || a.p == b.p);
    }
    std::string str() const { return infinite ? "inf" : p.str(); }
};

// Hilbert symbol over Q_v for nonzero rationals, via the classical unit/
// valuation formulas.  Square classes let both arguments be replaced by
// numerator*denominator, so only integer cases remain.
inline int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
    CTP_CHECK(a != 0 && b != 0, "hilbert_symbol: zero argument");
    Int A = numer(a) * denom(a);
    Int B = numer(b) * denom(b);
    if (v.infinite) return (A < 0 && B < 0) ? -1 : 1;
    const Int& p = v.p;
    auto [al, u] = split_valuation(A, p);
    auto [be, w] = split_valuation(B, p);
    int alp = static_cast<int>(al & 1), bep = static_cast<int>(be & 1);
    if (p == 2) {
        auto eps = [](const Int& x) { return fmod(x, 4) == 3 ? 1 : 0; };
        auto omg = [](const Int& x) {
            Int r = fmod(x, 8);
            return (r == 3 || r == 5) ? 1 : 0;
        };
        int e = eps(u) * eps(w) + alp * omg(w) + bep * omg(u);
        return (e & 1) ? -1 : 1;
    }
    int e = alp * bep * (fmod(p, 4) == 3 ? 1 : 0);
    int s = (e & 1) ? -1 : 1;
    if (bep) s *= jacobi(u, p);
    if (alp) s *= jacobi(w, p);
    return s;
}

inline int hilbert_inf(const Rat& a, const Rat& b) {
    return hilbert_symbol(a, b, Place::inf());
}

}  // namespace ctp
