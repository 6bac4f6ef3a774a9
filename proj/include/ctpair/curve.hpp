// Genus-2 curves y^2 = f(x) with deg f = 6 and all six roots rational, plus
// the bookkeeping for the rational 2-torsion of their Jacobians.
//
// A nontrivial 2-torsion class is an unordered pair of Weierstrass roots up
// to complementation; we store it as a 6-bit mask of even weight, canonical
// form having weight 0 or 2.  Addition is symmetric difference, the Weil
// pairing is parity of intersection.
#pragma once

#include <array>
#include <bit>
#include <vector>

#include "ctpair/factor.hpp"
#include "ctpair/poly.hpp"
#include "ctpair/rational.hpp"
#include "ctpair/squareclass.hpp"

namespace ctp {

struct TwoTorsion {
    unsigned mask = 0;  // subset of the 6 roots, canonical: weight 0 or 2

    static TwoTorsion canonical(unsigned m) {
        CTP_CHECK((std::popcount(m) & 1) == 0 && m < 64, "two-torsion mask must have even weight");
        if (std::popcount(m) > 2) m ^= 0x3f;
        return TwoTorsion{m};
    }
    static TwoTorsion zero() { return TwoTorsion{0}; }
    static TwoTorsion pair(int i, int j) {
        CTP_CHECK(i != j && i >= 0 && j >= 0 && i < 6 && j < 6, "bad root pair");
        return TwoTorsion{(1u << i) | (1u << j)};
    }

    bool is_zero() const { return mask == 0; }
    friend TwoTorsion operator+(TwoTorsion a, TwoTorsion b) { return canonical(a.mask ^ b.mask); }
    friend bool operator==(TwoTorsion a, TwoTorsion b) { return a.mask == b.mask; }

    // The two root indices of a nonzero class.
    std::pair<int, int> indices() const {
        CTP_CHECK(mask != 0, "indices of the zero class");
        int i = std::countr_zero(mask);
        int j = std::countr_zero(mask & (mask - 1));
        return {i, j};
    }
};

// Weil pairing values in {+1, -1}; masks of even weight make this well
// defined on canonical representatives.
inline int weil_pairing(TwoTorsion a, TwoTorsion b) {
    return (std::popcount(a.mask & b.mask) & 1) ? -1 : 1;
}

// The fixed symplectic-ish basis used everywhere downstream.
inline TwoTorsion torsion_P() { return TwoTorsion::pair(0, 1); }
inline TwoTorsion torsion_Q() { return TwoTorsion::pair(0, 2); }
inline TwoTorsion torsion_R() { return TwoTorsion::pair(3, 4); }
inline TwoTorsion torsion_S() { return TwoTorsion::pair(3, 5); }

inline std::array<TwoTorsion, 4> torsion_basis() {
    return {torsion_P(), torsion_Q(), torsion_R(), torsion_S()};
}

// Combination e = (eP, eQ, eR, eS) over F_2.
inline TwoTorsion torsion_combine(const std::array<int, 4>& e) {
    TwoTorsion t = TwoTorsion::zero();
    auto b = torsion_basis();
    for (int i = 0; i < 4; ++i)
        if (e[i] & 1) t = t + b[i];
    return t;
}

struct GenusTwoCurve {
    Rat lambda;                 // leading coefficient of f
    std::array<Rat, 6> roots;   // ordered as given; the order fixes the basis

    std::array<Rat, 7> f{};    // f[i] = coefficient of x^i

    GenusTwoCurve(Rat lead, std::array<Rat, 6> rts) : lambda(std::move(lead)), roots(std::move(rts)) {
        if (lambda == 0) throw InvalidInput("leading coefficient must be nonzero");
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                if (roots[i] == roots[j]) throw InvalidInput("roots must be distinct");
        Poly<Rat> fp = Rat(lambda) * poly_from_roots(std::vector<Rat>(roots.begin(), roots.end()));
        for (int i = 0; i <= 6; ++i) f[i] = fp.coeff(i);
    }

    Poly<Rat> fpoly() const { return Poly<Rat>(std::vector<Rat>(f.begin(), f.end())); }

    Rat eval_f(const Rat& x) const { return fpoly().eval(x); }

    // f'(w_i) for a root: lambda * prod_{j != i} (w_i - w_j).
    Rat fprime_at_root(int i) const {
        Rat p = lambda;
        for (int j = 0; j < 6; ++j)
            if (j != i) p *= roots[i] - roots[j];
        return p;
    }

    Rat disc() const {
        Rat d = 1;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) d *= (roots[i] - roots[j]) * (roots[i] - roots[j]);
        for (int k = 0; k < 10; ++k) d *= lambda;
        return d;
    }

    // Odd primes where the model degenerates, plus 2.
    std::vector<Int> bad_primes() const {
        Rat d = disc();
        auto [ps, cof] = prime_support(d);
        CTP_CHECK(cof == 1, "bad_primes: discriminant resisted factoring");
        std::vector<Int> out = ps;
        if (!std::count(out.begin(), out.end(), Int(2))) out.insert(out.begin(), Int(2));
        return out;
    }
};

}  // namespace ctp
