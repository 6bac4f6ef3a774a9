// The 2-descent connecting map on the Jacobian: a divisor class D maps, for
// each 2-torsion class T = {w_i, w_j}, to the square class of
// prod over affine support points (x_m, y_m) of (x_m - w_i)(x_m - w_j),
// where a vanishing factor (the point is the Weierstrass point over w_t) is
// replaced by f'(w_t).  Components are taken against the fixed basis
// P, Q, R, S and reduced to squarefree integers.
#pragma once

#include <array>

#include "ctpair/curve.hpp"
#include "ctpair/mumford.hpp"
#include "ctpair/squareclass.hpp"

namespace ctp {

// Single factor for root index t.
inline Rat delta_root_factor(const GenusTwoCurve& C, const Div<Rat>& D, int t) {
    const Rat& w = C.roots[t];
    long deg = D.u.degree();
    CTP_CHECK(deg >= 0 && deg <= 2, "delta: unsupported divisor weight");
    if (deg == 0) return Rat(1);
    Rat uval = D.u.eval(w);
    if (uval != 0) return uval;
    if (deg == 1) return C.fprime_at_root(t);
    // Weight 2 with one point sitting on (w_t, 0): the sibling root of u is
    // -u1 - w_t, and its honest factor survives.
    Rat sibling = -D.u.coeff(1) - w;
    return C.fprime_at_root(t) * (sibling - w);
}

inline Rat delta_component(const GenusTwoCurve& C, const Div<Rat>& D, TwoTorsion T) {
    CTP_CHECK(!T.is_zero(), "delta against the zero class");
    auto [i, j] = T.indices();
    return delta_root_factor(C, D, i) * delta_root_factor(C, D, j);
}

// Image of a divisor class under the descent map, as squarefree integers
// against (P, Q, R, S).
inline std::array<Int, 4> delta_image(const GenusTwoCurve& C, const Div<Rat>& D) {
    std::array<Int, 4> out;
    auto basis = torsion_basis();
    for (int k = 0; k < 4; ++k)
        out[k] = squarefree_reduce(delta_component(C, D, basis[k]));
    return out;
}

// Image of a 2-torsion class itself.
inline std::array<Int, 4> delta_two_torsion(const GenusTwoCurve& C, TwoTorsion A) {
    CTP_CHECK(!A.is_zero(), "delta of the zero class");
    auto [i, j] = A.indices();
    Jacobian<Rat> J(C.fpoly());
    Div<Rat> D = J.two_torsion_divisor(C.roots[i], C.roots[j]);
    return delta_image(C, D);
}

}  // namespace ctp
