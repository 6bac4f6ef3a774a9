// Curve model, 2-torsion combinatorics, Cantor arithmetic on the even-degree
// model, and the 2-descent connecting map.
//
// Cantor addition is validated against the classical geometric construction
// (interpolate a cubic through four points, intersect with the curve, flip),
// and against group-order counts derived from point counts of the curve over
// F_p and F_{p^2}.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ctpair/curve.hpp"
#include "ctpair/delta.hpp"
#include "ctpair/fp.hpp"
#include "ctpair/io.hpp"
#include "ctpair/linalg.hpp"
#include "ctpair/mumford.hpp"

using namespace ctp;

namespace {

GenusTwoCurve demo_curve() {
    return GenusTwoCurve(Rat(-10), {Rat(0), Rat(-10), Rat(-5), Rat(10), Rat(5), Rat(1)});
}

}  // namespace

TEST_CASE("curve construction and coefficients", "[curve]") {
    GenusTwoCurve C = demo_curve();
    CHECK(C.f[6] == -10);
    CHECK(C.f[5] == 10);
    CHECK(C.f[4] == 1250);
    CHECK(C.f[3] == -1250);
    CHECK(C.f[2] == -25000);
    CHECK(C.f[1] == 25000);
    CHECK(C.f[0] == 0);
    CHECK(C.eval_f(Rat(2)) == Rat(-10) * 2 * 12 * 7 * (-8) * (-3) * 1);
    // f'(w) at a root equals lambda * prod of differences.
    CHECK(C.fprime_at_root(0) == C.fpoly().derivative().eval(C.roots[0]));
    CHECK(C.fprime_at_root(3) == C.fpoly().derivative().eval(C.roots[3]));

    CHECK_THROWS_AS(GenusTwoCurve(Rat(0), {Rat(0), Rat(1), Rat(2), Rat(3), Rat(4), Rat(5)}),
                    InvalidInput);
    CHECK_THROWS_AS(GenusTwoCurve(Rat(1), {Rat(0), Rat(1), Rat(2), Rat(3), Rat(4), Rat(4)}),
                    InvalidInput);
}

TEST_CASE("curve JSON parsing", "[curve]") {
    auto j = nlohmann::json::parse(
        R"({"leading":"-10","roots":["0","-10","-5","10","5","1"]})");
    GenusTwoCurve C = curve_from_json(j);
    CHECK(C.lambda == -10);
    CHECK(C.roots[3] == 10);
    auto bad = nlohmann::json::parse(R"({"leading":"1","roots":["0","1","2","3","4"]})");
    CHECK_THROWS_AS(curve_from_json(bad), InvalidInput);
    auto sel = nlohmann::json::parse(R"({"generators":[["-33","1","-1","-11"],["11","1","-1","-11"]]})");
    auto gens = selmer_from_json(sel);
    REQUIRE(gens.size() == 2);
    CHECK(gens[0] == SelmerElement{-33, 1, -1, -11});
    CHECK(gens[1][0] == 11);
}

TEST_CASE("two-torsion mask algebra", "[curve]") {
    // Canonicalization folds complements together.
    CHECK(TwoTorsion::canonical(0b111100).mask == 0b000011);
    CHECK(TwoTorsion::canonical(0b111111).mask == 0);
    // P+Q is supported on roots 2 and 3 (0-indexed 1,2).
    CHECK((torsion_P() + torsion_Q()).mask == 0b0110u);
    // The sixteen basis combinations are exactly J[2].
    std::vector<unsigned> seen;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    TwoTorsion t = torsion_combine({a, b, c, d});
                    seen.push_back(t.mask);
                }
    std::sort(seen.begin(), seen.end());
    CHECK(std::unique(seen.begin(), seen.end()) == seen.end());
    CHECK(seen.size() == 16);
}

TEST_CASE("Weil pairing matrix on the standard basis", "[curve]") {
    auto B = torsion_basis();
    int expect[4][4] = {{1, -1, 1, 1}, {-1, 1, 1, 1}, {1, 1, 1, -1}, {1, 1, -1, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(weil_pairing(B[i], B[j]) == expect[i][j]);
    // Bilinearity over random combinations.
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        std::array<int, 4> e1, e2, e3;
        for (int k = 0; k < 4; ++k) {
            e1[k] = rng() & 1;
            e2[k] = rng() & 1;
            e3[k] = e1[k] ^ e2[k];
        }
        TwoTorsion A = torsion_combine(e1), B2 = torsion_combine(e2), C = torsion_combine(e3);
        TwoTorsion X = torsion_combine({int(rng() & 1), int(rng() & 1), int(rng() & 1), int(rng() & 1)});
        CHECK(weil_pairing(A, X) * weil_pairing(B2, X) == weil_pairing(C, X));
    }
}

namespace {

// Everything needed to run Cantor arithmetic over a small prime field.
struct FpJac {
    uint64_t p;
    Jacobian<Fp> J;
    std::vector<uint64_t> roots;

    static FpJac make(const GenusTwoCurve& C, uint64_t p) {
        std::vector<Fp> fc;
        for (int i = 0; i <= 6; ++i) fc.push_back(Fp::from(C.f[i]));
        std::vector<uint64_t> rts;
        for (int i = 0; i < 6; ++i) rts.push_back(Fp::from(C.roots[i]).v);
        return FpJac{p, Jacobian<Fp>(Poly<Fp>(std::move(fc))), std::move(rts)};
    }

    // A uniformish random affine non-Weierstrass point.
    std::pair<Fp, Fp> random_point(std::mt19937_64& rng) const {
        while (true) {
            Fp x(static_cast<uint64_t>(rng() % p));
            Fp fx = J.f.eval(x);
            if (fx == Fp(0)) continue;
            auto y = sqrtmod(fx.v, p);
            if (!y) continue;
            Fp yy = Fp::make(*y);
            if (rng() & 1) yy = -yy;
            return {x, yy};
        }
    }

    Div<Fp> random_divisor(std::mt19937_64& rng) const {
        while (true) {
            auto [x1, y1] = random_point(rng);
            auto [x2, y2] = random_point(rng);
            if (x1 == x2) continue;
            return J.from_points(x1, y1, x2, y2);
        }
    }
};

// Geometric addition oracle: a cubic through the four points, then flip the
// two residual intersections.
Div<Fp> add_by_cubic(const FpJac& F, const Div<Fp>& D1, const Div<Fp>& D2) {
    // Extract the four points; requires split u with distinct roots and
    // distinct x across the two divisors.
    auto points_of = [&](const Div<Fp>& D) -> std::vector<std::pair<Fp, Fp>> {
        Fp u1 = D.u.coeff(1), u0 = D.u.coeff(0);
        Fp disc = u1 * u1 - Fp(4) * u0;
        auto r = sqrtmod(disc.v, F.p);
        REQUIRE(r.has_value());
        REQUIRE(*r != 0);
        Fp s = Fp::make(*r);
        Fp inv2 = Fp(1) / Fp(2);
        Fp x1 = (-u1 + s) * inv2, x2 = (-u1 - s) * inv2;
        return {{x1, D.v.eval(x1)}, {x2, D.v.eval(x2)}};
    };
    auto pts = points_of(D1);
    auto pts2 = points_of(D2);
    pts.insert(pts.end(), pts2.begin(), pts2.end());
    Mat<Fp> V(4, 4);
    std::vector<Fp> rhs(4);
    for (int i = 0; i < 4; ++i) {
        Fp x = pts[i].first, m(1);
        for (int j = 0; j < 4; ++j) {
            V(i, j) = m;
            m *= x;
        }
        rhs[i] = pts[i].second;
    }
    auto w = solve(V, rhs);
    REQUIRE(w.has_value());
    Poly<Fp> wp(std::move(*w));
    Poly<Fp> t = F.J.f - wp * wp;
    REQUIRE(t.degree() == 6);
    auto [q, r] = divmod(t, D1.u * D2.u);
    REQUIRE(r.is_zero());
    REQUIRE(q.degree() == 2);
    Poly<Fp> unew = (Fp(1) / q.lead()) * q;
    Poly<Fp> vnew = (Poly<Fp>() - wp) % unew;
    return Div<Fp>{unew, vnew, 0, 0};
}

}  // namespace

TEST_CASE("Cantor addition matches the geometric construction", "[curve]") {
    GenusTwoCurve C = demo_curve();
    FpScope scope(10007);
    FpJac F = FpJac::make(C, 10007);
    std::mt19937_64 rng(41);
    int done = 0;
    while (done < 20) {
        Div<Fp> D1 = F.random_divisor(rng), D2 = F.random_divisor(rng);
        try {
            Div<Fp> S = F.J.add(D1, D2);
            if (S.weight() != 2) continue;
            Div<Fp> G = add_by_cubic(F, D1, D2);
            CHECK(F.J.equal(S, G));
            ++done;
        } catch (const SpecialDivisor&) {
            continue;
        }
    }
}

TEST_CASE("Cantor group axioms", "[curve]") {
    GenusTwoCurve C = demo_curve();
    FpScope scope(211);
    FpJac F = FpJac::make(C, 211);
    std::mt19937_64 rng(42);
    // Operation chains that wander off the generic affine locus are
    // resampled; the attempt budget bounds how often that may happen.
    int done = 0, attempts = 0;
    while (done < 15) {
        REQUIRE(++attempts < 120);
        Div<Fp> D1 = F.random_divisor(rng), D2 = F.random_divisor(rng), D3 = F.random_divisor(rng);
        try {
            bool comm = F.J.equal(F.J.add(D1, D2), F.J.add(D2, D1));
            bool assoc = F.J.equal(F.J.add(F.J.add(D1, D2), D3), F.J.add(D1, F.J.add(D2, D3)));
            bool inv = F.J.add(D1, F.J.neg(D1)).is_identity();
            bool twice = F.J.equal(F.J.sub(F.J.add(D1, D1), D1), D1);
            CHECK(comm);
            CHECK(assoc);
            CHECK(inv);
            CHECK(twice);
            ++done;
        } catch (const SpecialDivisor&) {
            continue;
        }
    }
}

TEST_CASE("torsion divisors follow mask arithmetic", "[curve]") {
    GenusTwoCurve C = demo_curve();
    FpScope scope(10007);
    FpJac F = FpJac::make(C, 10007);
    auto tdiv = [&](TwoTorsion t) {
        auto [i, j] = t.indices();
        return F.J.two_torsion_divisor(Fp::make(F.roots[i]), Fp::make(F.roots[j]));
    };
    auto B = torsion_basis();
    for (auto a : B)
        for (auto b : B) {
            TwoTorsion s = a + b;
            Div<Fp> sum = F.J.add(tdiv(a), tdiv(b));
            if (s.is_zero())
                CHECK(sum.is_identity());
            else
                CHECK(F.J.equal(sum, tdiv(s)));
        }
    // Doubling any torsion divisor gives the identity.
    for (auto t : {torsion_P(), torsion_Q(), torsion_R(), torsion_S()})
        CHECK(F.J.add(tdiv(t), tdiv(t)).is_identity());
}

namespace {

// #J(F_p) from point counts of the curve over F_p and F_{p^2}.
Int jacobian_order(const FpJac& F) {
    uint64_t p = F.p;
    // N1: affine points plus rational points at infinity.
    long n1 = 0;
    for (uint64_t x = 0; x < p; ++x) {
        Fp fx = F.J.f.eval(Fp::make(x));
        if (fx == Fp(0))
            n1 += 1;
        else
            n1 += 1 + legendre_u64(fx.v, p);
    }
    uint64_t f6 = F.J.f.coeff(6).v;
    n1 += (legendre_u64(f6, p) == 1) ? 2 : 0;
    // N2 over F_{p^2} = F_p(t), t^2 = ns (a non-residue).
    uint64_t ns = 2;
    while (legendre_u64(ns, p) != -1) ++ns;
    struct F2 {
        uint64_t a, b;
    };
    auto mul2 = [&](F2 u, F2 v) {
        return F2{addmod(mulmod(u.a, v.a, p), mulmod(ns, mulmod(u.b, v.b, p), p), p),
                  addmod(mulmod(u.a, v.b, p), mulmod(u.b, v.a, p), p)};
    };
    // z is a square in F_{p^2} iff z^{(p^2-1)/2} = 1; for z = a + b t this
    // is norm-based: z^{(p^2-1)/2} = N(z)^{(p-1)/2} with N(z) = a^2 - ns b^2.
    auto chi2 = [&](F2 z) -> int {
        uint64_t n = submod(mulmod(z.a, z.a, p), mulmod(ns, mulmod(z.b, z.b, p), p), p);
        if (n == 0) return 0;
        return legendre_u64(n, p);
    };
    long n2 = 0;
    for (uint64_t a = 0; a < p; ++a)
        for (uint64_t b = 0; b < p; ++b) {
            F2 x{a, b};
            // Evaluate f at x by Horner.
            F2 acc{0, 0};
            for (int i = 6; i >= 0; --i) {
                acc = mul2(acc, x);
                acc.a = addmod(acc.a, F.J.f.coeff(i).v, p);
            }
            n2 += 1 + chi2(acc);
        }
    n2 += 2;  // f6 is always a square in F_{p^2}
    Int a1 = Int(p) + 1 - n1;
    Int a2 = (a1 * a1 - (Int(p) * p + 1 - n2)) / 2;
    return 1 + Int(p) * p - a1 * (1 + Int(p)) + a2;
}

}  // namespace

TEST_CASE("group order annihilates random divisors", "[curve]") {
    GenusTwoCurve C = demo_curve();
    FpScope scope(211);
    FpJac F = FpJac::make(C, 211);
    Int N = jacobian_order(F);
    // The order is divisible by 16 (full rational 2-torsion).
    CHECK(fmod(N, 16) == 0);
    std::mt19937_64 rng(77);
    int done = 0, attempts = 0;
    while (done < 5 && attempts < 60) {
        ++attempts;
        Div<Fp> D = F.random_divisor(rng);
        try {
            bool killed = F.J.mul(D, N).is_identity();
            CHECK(killed);
            ++done;
        } catch (const SpecialDivisor&) {
            continue;
        }
    }
    CHECK(done == 5);
}

TEST_CASE("descent map reproduces the known images of the torsion basis", "[curve]") {
    GenusTwoCurve C = demo_curve();
    CHECK(delta_two_torsion(C, torsion_P()) == std::array<Int, 4>{-66, 1, 6, 22});
    CHECK(delta_two_torsion(C, torsion_Q()) == std::array<Int, 4>{-1, 1, 3, 1});
    CHECK(delta_two_torsion(C, torsion_R()) == std::array<Int, 4>{6, 3, 1, 3});
    CHECK(delta_two_torsion(C, torsion_S()) == std::array<Int, 4>{22, 1, -3, -11});
}

TEST_CASE("descent map is a homomorphism on J[2]", "[curve]") {
    std::vector<GenusTwoCurve> curves;
    curves.push_back(demo_curve());
    curves.emplace_back(Rat(3), std::array<Rat, 6>{Rat(-3), Rat(-1), Rat(0), Rat(2), Rat(5), Rat(7)});
    curves.emplace_back(Rat(-1), std::array<Rat, 6>{Rat(1), Rat(2), Rat(3), Rat(4), Rat(5), Rat(6)});
    for (const auto& C : curves) {
        std::vector<TwoTorsion> all;
        for (unsigned m = 1; m < 64; ++m)
            if (std::popcount(m) == 2) all.push_back(TwoTorsion::canonical(m));
        REQUIRE(all.size() == 15);
        for (auto A : all)
            for (auto B : all) {
                TwoTorsion S = A + B;
                if (S.is_zero()) continue;
                auto dA = delta_two_torsion(C, A);
                auto dB = delta_two_torsion(C, B);
                auto dS = delta_two_torsion(C, S);
                for (int k = 0; k < 4; ++k)
                    CHECK(same_class(Rat(dA[k]) * Rat(dB[k]), Rat(dS[k])));
            }
    }
}

TEST_CASE("descent map on a generic divisor lands on torsion sums correctly", "[curve]") {
    // delta(D + T) ~ delta(D) * delta(T) for a rational divisor D.  The curve
    // y^2 = -(x-1)...(x-6) has the rational point (7/2, 15/8); the tangent
    // divisor there is a generic weight-2 class.
    GenusTwoCurve C(Rat(-1), {Rat(1), Rat(2), Rat(3), Rat(4), Rat(5), Rat(6)});
    Jacobian<Rat> J(C.fpoly());
    Rat x0(7, 2);
    Rat fx = C.eval_f(x0);
    REQUIRE(fx == Rat(225, 64));
    Rat y0 = sqrt_exact(fx);
    Div<Rat> D = J.from_points(x0, y0, x0, y0);
    for (auto T : torsion_basis()) {
        auto [i, j] = T.indices();
        Div<Rat> TD = J.two_torsion_divisor(C.roots[i], C.roots[j]);
        Div<Rat> sum = J.add(D, TD);
        auto dD = delta_image(C, D);
        auto dT = delta_image(C, TD);
        auto dS = delta_image(C, sum);
        for (int k = 0; k < 4; ++k)
            CHECK(same_class(Rat(dD[k]) * Rat(dT[k]), Rat(dS[k])));
    }
}
