// Mumford representation and Cantor arithmetic on the Jacobian of an
// even-degree genus-2 model y^2 = f(x), deg f = 6.
//
// The model has two points at infinity; a divisor class is stored as
// (u, v, winf+, winf-) with u monic, v^2 = f mod u, deg v < deg u, and
// infinity weights summing to 2 - deg u.  Weight-2 affine classes
// (deg u = 2) are the generic case and the only inputs the group law
// accepts; sampling code treats SpecialDivisor as a resample signal.
// Classes of lower affine weight are constructed directly where needed
// (torsion tests, halving recovery) and never pushed through addition.
#pragma once

#include "ctpair/common.hpp"
#include "ctpair/poly.hpp"

namespace ctp {

// Signals a divisor configuration outside the generic-case group law.
struct SpecialDivisor : Error {
    explicit SpecialDivisor(const std::string& msg) : Error(msg) {}
};

template <class K>
struct Div {
    Poly<K> u, v;
    int winf_plus = 0, winf_minus = 0;

    long weight() const { return u.degree(); }
    bool is_identity() const { return u.degree() == 0 && v.is_zero() && winf_plus == 1; }
};

// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_xgcd(Poly<K> a, Poly<K> b) {
    Poly<K> s0 = Poly<K>::constant(K(1)), s1;
    Poly<K> t0, t1 = Poly<K>::constant(K(1));
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = b;
        b = r;
        Poly<K> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (a.is_zero()) return {a, s0, t0};
    K lead = a.lead();
    K inv = K(1) / lead;
    return {inv * a, inv * s0, inv * t0};
}

template <class K>
class Jacobian {
  public:
    Poly<K> f;  // degree 6

    explicit Jacobian(Poly<K> sextic) : f(std::move(sextic)) {
        CTP_CHECK(f.degree() == 6, "Jacobian: f must have degree 6");
    }

    Div<K> identity() const { return Div<K>{Poly<K>::constant(K(1)), Poly<K>(), 1, 1}; }

    bool valid(const Div<K>& D) const {
        if (D.u.is_zero() || !(D.u.lead() == K(1))) return false;
        if (D.u.degree() + D.winf_plus + D.winf_minus != 2) return false;
        if (!D.v.is_zero() && D.v.degree() >= D.u.degree()) return false;
        return ((D.v * D.v - f) % D.u).is_zero();
    }

    // The affine pair {(x1,y1), (x2,y2)} (x1 != x2), or a tangent doubled
    // point when x1 == x2, y1 == y2 != 0.
    Div<K> from_points(const K& x1, const K& y1, const K& x2, const K& y2) const {
        if (!(x1 == x2)) {
            Poly<K> u(std::vector<K>{x1 * x2, K(0) - (x1 + x2), K(1)});
            K slope = (y2 - y1) / (x2 - x1);
            Poly<K> v(std::vector<K>{y1 - slope * x1, slope});
            Div<K> D{u, v, 0, 0};
            CTP_CHECK(valid(D), "from_points: not on the Jacobian");
            return D;
        }
        CTP_CHECK(y1 == y2 && !(y1 == K(0)), "from_points: bad doubled point");
        // v = y1 + f'(x1)/(2 y1) (x - x1) makes y - v(x) tangent at the point.
        K fp = f.derivative().eval(x1);
        K slope = fp / (K(2) * y1);
        Poly<K> u(std::vector<K>{x1 * x1, K(0) - (x1 + x1), K(1)});
        Poly<K> v(std::vector<K>{y1 - slope * x1, slope});
        Div<K> D{u, v, 0, 0};
        CTP_CHECK(valid(D), "from_points: tangent construction failed");
        return D;
    }

    // The 2-torsion class supported on roots x1, x2 of f.
    Div<K> two_torsion_divisor(const K& x1, const K& x2) const {
        Poly<K> u(std::vector<K>{x1 * x2, K(0) - (x1 + x2), K(1)});
        Div<K> D{u, Poly<K>(), 0, 0};
        CTP_CHECK(valid(D), "two_torsion_divisor: not roots of f");
        return D;
    }

    Div<K> neg(const Div<K>& D) const {
        Div<K> N{D.u, Poly<K>() - D.v, D.winf_minus, D.winf_plus};
        return N;
    }

    // Cantor composition + one reduction, restricted to weight-2 inputs and
    // weight-2 or identity output.  Everything else raises SpecialDivisor.
    Div<K> add(const Div<K>& D1, const Div<K>& D2) const {
        if (D1.is_identity()) return D2;
        if (D2.is_identity()) return D1;
        if (D1.weight() != 2 || D2.weight() != 2 || D1.winf_plus != 0 || D2.winf_plus != 0 ||
            D1.winf_minus != 0 || D2.winf_minus != 0)
            throw SpecialDivisor("add: non-generic input");
        // d = gcd(u1, u2, v1+v2) = s1 u1 + s2 u2 + s3 (v1+v2).
        auto [d1, e1, e2] = poly_xgcd(D1.u, D2.u);
        Poly<K> vsum = D1.v + D2.v;
        auto [d, c1, c2] = poly_xgcd(d1, vsum);
        Poly<K> s1 = c1 * e1, s2 = c1 * e2, s3 = c2;
        auto [u, urem] = divmod(D1.u * D2.u, d * d);
        CTP_CHECK(urem.is_zero(), "cantor: u1 u2 not divisible by d^2");
        // v = (s1 u1 v2 + s2 u2 v1 + s3 (v1 v2 + f)) / d  mod u
        Poly<K> num = s1 * D1.u * D2.v + s2 * D2.u * D1.v + s3 * (D1.v * D2.v + f);
        auto [vq, vr] = divmod(num, d);
        CTP_CHECK(vr.is_zero(), "cantor: composition numerator not divisible");
        Poly<K> v = vq % u;
        if (u.degree() == 0) {
            // Full cancellation: the classes were negatives of each other.
            return identity();
        }
        if (u.degree() == 2) return Div<K>{u, v, 0, 0};
        if (u.degree() == 4) {
            Poly<K> t = f - v * v;
            if (t.is_zero() || t.degree() != 6)
                throw SpecialDivisor("add: reduction would drop to infinity");
            auto [uq, ur] = divmod(t, u);
            CTP_CHECK(ur.is_zero(), "cantor: reduction not divisible");
            K inv = K(1) / uq.lead();
            Poly<K> unew = inv * uq;
            Poly<K> vnew = (Poly<K>() - v) % unew;
            Div<K> D{unew, vnew, 0, 0};
            CTP_CHECK(valid(D), "cantor: invalid reduced divisor");
            return D;
        }
        throw SpecialDivisor("add: unsupported composition degree");
    }

    Div<K> sub(const Div<K>& D1, const Div<K>& D2) const { return add(D1, neg(D2)); }

    // Scalar multiple by double-and-add; any special configuration along the
    // way propagates as SpecialDivisor.
    Div<K> mul(const Div<K>& D, const Int& n) const {
        if (n < 0) return mul(neg(D), -n);
        Div<K> acc = identity(), base = D;
        Int k = n;
        while (k > 0) {
            if (fmod(k, 2) == 1) acc = add(acc, base);
            k /= 2;
            if (k > 0) base = add(base, base);
        }
        return acc;
    }

    bool equal(const Div<K>& D1, const Div<K>& D2) const {
        return D1.u == D2.u && D1.v == D2.v && D1.winf_plus == D2.winf_plus &&
               D1.winf_minus == D2.winf_minus;
    }
};

}  // namespace ctp
