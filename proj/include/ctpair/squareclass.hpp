// Square classes of Q*: every nonzero rational is sign * (squarefree
// integer) * (square), and the squarefree integer is the canonical
// representative used throughout descent bookkeeping.
#pragma once

#include "ctpair/factor.hpp"
#include "ctpair/rational.hpp"

namespace ctp {

// Canonical squarefree representative of the square class of x.
inline Int squarefree_reduce(const Rat& x) {
    CTP_CHECK(x != 0, "squarefree_reduce(0)");
    Int n = numer(x) * denom(x);
    Factorization f = factor(n);
    CTP_CHECK(f.complete() || is_square(f.cofactor) || is_prime(f.cofactor),
              "squarefree_reduce: could not certify square part");
    Int r = sgn(n);
    for (auto& [p, e] : f.primes)
        if (e % 2) r *= p;
    if (!f.complete() && !is_square(f.cofactor)) r *= f.cofactor;
    return r;
}

inline Int squarefree_reduce(const Int& x) { return squarefree_reduce(Rat(x)); }

// Class multiplication: squarefree representative of a*b.
inline Int class_mul(const Int& a, const Int& b) {
    Int g = igcd(iabs(a), iabs(b));
    return (a / g) * (b / g);
}

inline bool same_class(const Rat& a, const Rat& b) {
    return is_square(a * b);
}

inline bool is_trivial_class(const Rat& a) { return is_square(a); }

}  // namespace ctp
