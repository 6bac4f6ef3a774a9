// The Kummer surface attached to a genus-2 Jacobian: the degree-4 model in
// P^3, its defining quartic, the 4x4 translation matrices of the sixteen
// 2-torsion points, the quartic doubling forms, and halving of 2-torsion
// into 4-torsion over a prescribed multiquadratic field.
//
// None of the model data is hard-coded.  Every object (quartic, matrices,
// doubling forms) is derived per curve by evaluating the coordinate
// functions on sampled divisors and solving exact linear systems, then
// re-verified on fresh samples.  Two independent derivation routes exist
// for each object: direct exact linear algebra over Q (sampling divisors
// over small multiquadratic fields), and reduction modulo several good
// primes followed by CRT and rational reconstruction.  The cheap route is
// used in production and the other is kept for cross-checking.
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "ctpair/curve.hpp"
#include "ctpair/factor.hpp"
#include "ctpair/fp.hpp"
#include "ctpair/linalg.hpp"
#include "ctpair/mquad.hpp"
#include "ctpair/mumford.hpp"
#include "ctpair/squareclass.hpp"

namespace ctp {

// ---------------------------------------------------------------------------
// Quartic forms in k1..k4.

// Exponent tuples of total degree 4 in four variables, lexicographically
// decreasing.  This fixed order is shared by derivation, evaluation, and
// the JSON dump of the model.
inline const std::vector<std::array<int, 4>>& quartic_monomials() {
    static const std::vector<std::array<int, 4>> mono = [] {
        std::vector<std::array<int, 4>> m;
        for (int a = 4; a >= 0; --a)
            for (int b = 4 - a; b >= 0; --b)
                for (int c = 4 - a - b; c >= 0; --c)
                    m.push_back({a, b, c, 4 - a - b - c});
        return m;
    }();
    return mono;
}

inline constexpr size_t kQuarticTerms = 35;

namespace detail {

template <class K>
K from_rat(const Rat& q) {
    if constexpr (std::is_same_v<K, Fp>)
        return Fp::from(q);
    else if constexpr (std::is_same_v<K, Rat>)
        return q;
    else
        return K(q);
}

template <class K>
K from_int(const Int& n) {
    return from_rat<K>(Rat(n));
}

// Power table k^0..k^4 for each coordinate, then a 35-entry monomial value
// vector in the shared order.
template <class K>
std::array<K, kQuarticTerms> quartic_monomial_values(const std::array<K, 4>& k) {
    K pw[4][5];
    for (int i = 0; i < 4; ++i) {
        pw[i][0] = from_int<K>(1);
        for (int e = 1; e <= 4; ++e) pw[i][e] = pw[i][e - 1] * k[i];
    }
    std::array<K, kQuarticTerms> out;
    const auto& mono = quartic_monomials();
    for (size_t m = 0; m < kQuarticTerms; ++m)
        out[m] = pw[0][mono[m][0]] * pw[1][mono[m][1]] * pw[2][mono[m][2]] * pw[3][mono[m][3]];
    return out;
}

}  // namespace detail

template <class K>
K eval_quartic_form(const std::array<Int, kQuarticTerms>& c, const std::array<K, 4>& k) {
    auto mono = detail::quartic_monomial_values(k);
    K acc = detail::from_int<K>(0);
    for (size_t m = 0; m < kQuarticTerms; ++m)
        if (c[m] != 0) acc = acc + detail::from_int<K>(c[m]) * mono[m];
    return acc;
}

// The defining quartic of the Kummer surface, primitive integer
// coefficients, first nonzero positive.
struct Quartic {
    std::array<Int, kQuarticTerms> c{};

    template <class K>
    K eval(const std::array<K, 4>& k) const {
        return eval_quartic_form(c, k);
    }
};

// The four doubling forms: (d1(k) : ... : d4(k)) = k(2X) projectively.
struct DoublingForms {
    std::array<std::array<Int, kQuarticTerms>, 4> f{};

    template <class K>
    std::array<K, 4> apply(const std::array<K, 4>& k) const {
        auto mono = detail::quartic_monomial_values(k);
        std::array<K, 4> out{detail::from_int<K>(0), detail::from_int<K>(0),
                             detail::from_int<K>(0), detail::from_int<K>(0)};
        for (int i = 0; i < 4; ++i)
            for (size_t m = 0; m < kQuarticTerms; ++m)
                if (f[i][m] != 0) out[i] = out[i] + detail::from_int<K>(f[i][m]) * mono[m];
        return out;
    }
};

// Translation by a 2-torsion point acts linearly on P^3.  M has primitive
// integer entries with the first nonzero entry positive, and M^2 = c I.
// Only the square class of c matters downstream.
struct TranslationMatrix {
    TwoTorsion T;
    Mat<Rat> M{4, 4};
    Int c = 1;
};

// ---------------------------------------------------------------------------
// The Kummer coordinate map.

// F0(x, u) expressed through the elementary symmetric functions e1 = x + u,
// e2 = xu of the two x-coordinates.
template <class K>
K kummer_f0(const std::array<K, 7>& f, const K& e1, const K& e2) {
    K two = detail::from_int<K>(2);
    return two * f[0] + f[1] * e1 + two * f[2] * e2 + f[3] * e1 * e2 +
           (two * f[4] + f[5] * e1 + two * f[6] * e2) * e2 * e2;
}

template <class K>
std::array<K, 7> curve_coeffs(const GenusTwoCurve& C) {
    std::array<K, 7> f;
    for (int i = 0; i < 7; ++i) f[i] = detail::from_rat<K>(C.f[i]);
    return f;
}

// Image of a weight-2 affine divisor class (or the identity) on the Kummer
// surface.  Everything is computed from the symmetric functions of the
// divisor, so the individual points never need to be split off.  Classes
// supported at infinity raise SpecialDivisor; samplers retry instead.
template <class K>
std::array<K, 4> kummer_map(const std::array<K, 7>& f, const Div<K>& D) {
    K zero = detail::from_int<K>(0), one = detail::from_int<K>(1);
    if (D.is_identity()) return {zero, zero, zero, one};
    if (D.weight() != 2 || D.winf_plus != 0 || D.winf_minus != 0)
        throw SpecialDivisor("kummer map: class supported at infinity");
    K e1 = zero - D.u.coeff(1);
    K e2 = D.u.coeff(0);
    K disc = e1 * e1 - detail::from_int<K>(4) * e2;
    K F0 = kummer_f0(f, e1, e2);
    if (!(disc == zero)) {
        // w = y1 y2 as a symmetric function of the divisor.
        K v0 = D.v.coeff(0), v1 = D.v.coeff(1);
        K w = v0 * v0 + v0 * v1 * e1 + v1 * v1 * e2;
        return {one, e1, e2, (F0 - detail::from_int<K>(2) * w) / disc};
    }
    // Doubled point {(x0,y0), (x0,y0)}: the continuous limit of the generic
    // beta0 along the curve branch, using the tangent slope v1.
    K x0 = e1 / detail::from_int<K>(2);
    K v1 = D.v.coeff(1);
    K x2 = x0 * x0;
    K beta = v1 * v1 - (f[2] + detail::from_int<K>(2) * f[3] * x0 +
                        detail::from_int<K>(4) * f[4] * x2 +
                        detail::from_int<K>(6) * f[5] * x2 * x0 +
                        detail::from_int<K>(9) * f[6] * x2 * x2);
    return {one, e1, e2, beta};
}

template <class K>
std::array<K, 4> kummer_map(const GenusTwoCurve& C, const Div<K>& D) {
    return kummer_map(curve_coeffs<K>(C), D);
}

// M * k for a rational matrix acting on coordinates over a larger field.
template <class K>
std::array<K, 4> apply_matrix(const Mat<Rat>& M, const std::array<K, 4>& k) {
    std::array<K, 4> out;
    for (int i = 0; i < 4; ++i) {
        K acc = detail::from_int<K>(0);
        for (int j = 0; j < 4; ++j) acc = acc + detail::from_rat<K>(M(i, j)) * k[j];
        out[i] = acc;
    }
    return out;
}

template <class K>
bool proportional4(const std::array<K, 4>& a, const std::array<K, 4>& b) {
    std::vector<K> va(a.begin(), a.end()), vb(b.begin(), b.end());
    return proportional(va, vb);
}

// ---------------------------------------------------------------------------
// Sampling.

namespace detail {

template <class K>
Poly<K> fpoly_as(const GenusTwoCurve& C) {
    auto fc = curve_coeffs<K>(C);
    return Poly<K>(std::vector<K>(fc.begin(), fc.end()));
}

// Primes suitable for reducing the curve: odd, good reduction, and unit
// leading coefficient.  Deterministic ascending scan from `start`.
inline std::vector<Int> derivation_primes(const GenusTwoCurve& C, size_t count, uint64_t start) {
    std::vector<Int> out;
    Int p = start | 1;
    while (out.size() < count) {
        if (is_prime(p)) {
            bool good = valuation(C.lambda, p) == 0;
            for (int i = 0; i < 6 && good; ++i) {
                if (C.roots[i] != 0 && valuation(C.roots[i], p) < 0) good = false;
                for (int j = i + 1; j < 6 && good; ++j)
                    if (valuation(C.roots[i] - C.roots[j], p) != 0) good = false;
            }
            if (good) out.push_back(p);
        }
        p += 2;
    }
    return out;
}

// Random weight-2 affine divisor with distinct x-coordinates and nonzero
// y-coordinates over the current prime field.
inline Div<Fp> random_divisor_fp(const Poly<Fp>& f, std::mt19937_64& rng) {
    auto random_point = [&](uint64_t avoid, bool have_avoid) -> std::pair<Fp, Fp> {
        for (int tries = 0; tries < 4000; ++tries) {
            Fp x = Fp::make(rng() % Fp::P);
            if (have_avoid && x.v == avoid) continue;
            Fp fx = f.eval(x);
            if (fx.v == 0) continue;
            auto y = sqrtmod(fx.v, Fp::P);
            if (!y) continue;
            Fp yy = Fp::make(rng() & 1 ? *y : Fp::P - *y);
            return {x, yy};
        }
        throw DerivationError("random_divisor_fp: no smooth point found");
    };
    auto [x1, y1] = random_point(0, false);
    auto [x2, y2] = random_point(x1.v, true);
    Jacobian<Fp> J(f);
    return J.from_points(x1, y1, x2, y2);
}

// Exact divisor sample: two small rational x-values with nonzero f-values,
// y-coordinates adjoined as formal square roots.  The Kummer image lives in
// a multiquadratic field of degree at most 4.
struct ExactSample {
    FieldPtr F;
    Div<MQ> D;
    std::array<MQ, 4> k;
};

inline Rat small_rat(std::mt19937_64& rng, long num_range, long den_max) {
    long num = static_cast<long>(rng() % (2 * num_range + 1)) - num_range;
    long den = 1 + static_cast<long>(rng() % den_max);
    return Rat(num, den);
}

inline ExactSample random_divisor_exact(const GenusTwoCurve& C, std::mt19937_64& rng) {
    for (int tries = 0; tries < 400; ++tries) {
        Rat x1 = small_rat(rng, 20, 3), x2 = small_rat(rng, 20, 3);
        if (x1 == x2) continue;
        Rat f1 = C.eval_f(x1), f2 = C.eval_f(x2);
        if (f1 == 0 || f2 == 0) continue;
        auto fw = make_field({f1, f2});
        MQ y1 = fw.roots[0], y2 = fw.roots[1];
        MQ mx1(x1), mx2(x2);
        // Lagrange interpolation of v through the two points.
        MQ slope = (y2 - y1) / (mx2 - mx1);
        MQ v0 = y1 - slope * mx1;
        Div<MQ> D;
        D.u = Poly<MQ>({mx1 * mx2, MQ(0) - (mx1 + mx2), MQ(1)});
        D.v = Poly<MQ>({v0, slope});
        D.winf_plus = D.winf_minus = 0;
        ExactSample s;
        s.F = fw.field;
        s.D = D;
        s.k = kummer_map(curve_coeffs<MQ>(C), D);
        return s;
    }
    throw DerivationError("random_divisor_exact: sampling failed");
}

// Expand one linear equation with MQ coefficients into rational rows, one
// per field-basis component.
inline void expand_mq_row(const std::vector<MQ>& row, std::vector<std::vector<Rat>>& rows) {
    size_t dim = 1;
    for (const auto& e : row) dim = std::max(dim, e.dim());
    for (size_t t = 0; t < dim; ++t) {
        std::vector<Rat> r(row.size());
        bool nonzero = false;
        for (size_t j = 0; j < row.size(); ++j) {
            r[j] = row[j].component(t);
            if (r[j] != 0) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(r));
    }
}

// Primitive integer vector from a rational kernel vector, first nonzero
// entry positive.
inline std::vector<Int> primitive_integer(const std::vector<Rat>& v) {
    Int lcm = 1;
    for (const auto& q : v) lcm = ilcm(lcm, denom(q));
    std::vector<Int> w(v.size());
    Int content = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        w[i] = numer(v[i] * lcm);
        content = igcd(content, w[i]);
    }
    CTP_CHECK(content != 0, "primitive_integer: zero vector");
    int sign = 0;
    for (auto& x : w) {
        x /= content;
        if (sign == 0 && x != 0) sign = x > 0 ? 1 : -1;
    }
    if (sign < 0)
        for (auto& x : w) x = -x;
    return w;
}

// Solve a homogeneous system given as rational rows; the kernel must be
// one-dimensional.  Returns the primitive integer representative.
inline std::optional<std::vector<Int>> unique_kernel(const std::vector<std::vector<Rat>>& rows,
                                                     size_t cols) {
    Mat<Rat> A(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j) A(i, j) = rows[i][j];
    auto ker = nullspace(A);
    if (ker.size() != 1) return std::nullopt;
    return primitive_integer(ker[0]);
}

// Kernel of the same kind of system modulo the current prime, normalized so
// the anchor coordinate equals 1.  Returns nullopt if the kernel dimension
// is not 1 or the anchor vanishes.
inline std::optional<std::vector<uint64_t>> unique_kernel_fp(
    const std::vector<std::vector<Fp>>& rows, size_t cols, std::optional<size_t>& anchor) {
    Mat<Fp> A(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j) A(i, j) = rows[i][j];
    auto ker = nullspace(A);
    if (ker.size() != 1) return std::nullopt;
    if (!anchor) {
        for (size_t j = 0; j < cols; ++j)
            if (ker[0][j].v != 0) {
                anchor = j;
                break;
            }
    }
    if (!anchor || ker[0][*anchor].v == 0) return std::nullopt;
    Fp inv = Fp::make(1) / ker[0][*anchor];
    std::vector<uint64_t> out(cols);
    for (size_t j = 0; j < cols; ++j) out[j] = (ker[0][j] * inv).v;
    return out;
}

// CRT + rational reconstruction of a vector known modulo several primes.
inline std::optional<std::vector<Rat>> reconstruct_vector(
    const std::vector<std::vector<uint64_t>>& residues, const std::vector<Int>& primes) {
    size_t cols = residues[0].size();
    std::vector<Rat> out(cols);
    for (size_t j = 0; j < cols; ++j) {
        Int r = residues[0][j], m = primes[0];
        for (size_t t = 1; t < residues.size(); ++t) {
            r = crt_pair(r, m, Int(residues[t][j]), primes[t]);
            m *= primes[t];
        }
        auto q = rational_reconstruct(r, m);
        if (!q) return std::nullopt;
        out[j] = *q;
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Quartic derivation.

namespace detail {

// One exact Kummer point from a random monic quadratic u: the product of
// the two y-coordinates is adjoined as a formal square root of res(u, f).
inline std::optional<std::array<MQ, 4>> random_kummer_point_exact(const GenusTwoCurve& C,
                                                                  std::mt19937_64& rng) {
    Rat u1 = small_rat(rng, 25, 3), u0 = small_rat(rng, 25, 3);
    Rat disc = u1 * u1 - 4 * u0;
    if (disc == 0) return std::nullopt;
    Poly<Rat> u({u0, u1, Rat(1)});
    Rat res = resultant(u, C.fpoly());
    if (res == 0) return std::nullopt;
    auto fw = make_field({res});
    MQ w = fw.roots[0];
    if (rng() & 1) w = MQ(0) - w;
    MQ e1(-u1), e2(u0);
    MQ f0 = kummer_f0(curve_coeffs<MQ>(C), e1, e2);
    return std::array<MQ, 4>{MQ(1), e1, e2, (f0 - MQ(2) * w) / MQ(disc)};
}

}  // namespace detail

// Derive the Kummer quartic by exact interpolation over Q.  Samples are
// taken over quadratic fields so every point contributes two rational rows.
inline Quartic derive_quartic(const GenusTwoCurve& C, std::mt19937_64& rng) {
    std::vector<std::vector<Rat>> rows;
    for (int round = 0; round < 4; ++round) {
        size_t want = rows.size() + 80;
        while (rows.size() < want) {
            auto k = detail::random_kummer_point_exact(C, rng);
            if (!k) continue;
            auto mono = detail::quartic_monomial_values(*k);
            detail::expand_mq_row(std::vector<MQ>(mono.begin(), mono.end()), rows);
        }
        auto ker = detail::unique_kernel(rows, kQuarticTerms);
        if (!ker) continue;
        Quartic G;
        for (size_t m = 0; m < kQuarticTerms; ++m) G.c[m] = (*ker)[m];
        // Fresh-sample validation over new exact points.
        for (int s = 0; s < 25;) {
            auto k = detail::random_kummer_point_exact(C, rng);
            if (!k) continue;
            CTP_CHECK(G.eval(*k).is_zero(), "quartic: fresh exact sample not on surface");
            ++s;
        }
        return G;
    }
    throw DerivationError("derive_quartic: kernel never became one-dimensional");
}

// Same object through the modular route: kernels modulo several good
// primes, CRT, rational reconstruction, exact validation.
inline Quartic derive_quartic_crt(const GenusTwoCurve& C, std::mt19937_64& rng) {
    for (size_t nprimes = 3; nprimes <= 17; nprimes += 2) {
        auto primes = detail::derivation_primes(C, nprimes, 1000000007ULL);
        std::vector<std::vector<uint64_t>> residues;
        std::optional<size_t> anchor;
        for (const auto& p : primes) {
            FpScope scope(to_u64(p));
            Poly<Fp> f = detail::fpoly_as<Fp>(C);
            std::vector<std::vector<Fp>> rows;
            for (int s = 0; s < 70; ++s) {
                Div<Fp> D = detail::random_divisor_fp(f, rng);
                auto k = kummer_map(curve_coeffs<Fp>(C), D);
                auto mono = detail::quartic_monomial_values(k);
                rows.emplace_back(mono.begin(), mono.end());
            }
            auto vec = detail::unique_kernel_fp(rows, kQuarticTerms, anchor);
            if (!vec) continue;
            residues.push_back(std::move(*vec));
        }
        if (residues.size() < 3) continue;
        std::vector<Int> used(primes.begin(), primes.begin() + residues.size());
        auto rec = detail::reconstruct_vector(residues, used);
        if (!rec) continue;
        auto vec = detail::primitive_integer(*rec);
        Quartic G;
        for (size_t m = 0; m < kQuarticTerms; ++m) G.c[m] = vec[m];
        bool ok = true;
        for (int s = 0; s < 15 && ok;) {
            auto k = detail::random_kummer_point_exact(C, rng);
            if (!k) continue;
            ok = G.eval(*k).is_zero();
            ++s;
        }
        if (ok) return G;
    }
    throw DerivationError("derive_quartic_crt: reconstruction failed");
}

// ---------------------------------------------------------------------------
// Translation matrices.

namespace detail {

// Cross-product equations expressing M a ∝ b, appended as rational rows
// over the 16 matrix unknowns (row-major).
template <class K>
void translation_rows(const std::array<K, 4>& a, const std::array<K, 4>& b,
                      std::vector<std::vector<K>>& rows) {
    for (int r = 0; r < 4; ++r)
        for (int s = r + 1; s < 4; ++s) {
            std::vector<K> row(16, from_int<K>(0));
            for (int i = 0; i < 4; ++i) {
                row[4 * r + i] = row[4 * r + i] + a[i] * b[s];
                row[4 * s + i] = row[4 * s + i] - a[i] * b[r];
            }
            rows.push_back(std::move(row));
        }
}

inline TranslationMatrix finish_translation(TwoTorsion T, const std::vector<Int>& vec) {
    TranslationMatrix out;
    out.T = T;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.M(i, j) = Rat(vec[4 * i + j]);
    Mat<Rat> sq = out.M * out.M;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CTP_CHECK(i == j ? sq(i, j) == sq(0, 0) : sq(i, j) == 0,
                      "translation: square is not scalar");
    CTP_CHECK(sq(0, 0) != 0 && denom(sq(0, 0)) == 1, "translation: bad c value");
    out.c = numer(sq(0, 0));
    return out;
}

}  // namespace detail

// Derive the translation matrix of a nonzero 2-torsion point by exact
// interpolation: sample divisors X over small multiquadratic fields, add T
// by Cantor composition, and match Kummer images projectively.
inline TranslationMatrix derive_translation(const GenusTwoCurve& C, TwoTorsion T,
                                            std::mt19937_64& rng) {
    if (T.is_zero()) {
        TranslationMatrix out;
        out.T = T;
        out.M = Mat<Rat>::identity(4);
        out.c = 1;
        return out;
    }
    auto [i, j] = T.indices();
    auto fmq = curve_coeffs<MQ>(C);
    std::vector<std::vector<Rat>> rows;
    auto add_sample = [&]() {
        for (int tries = 0; tries < 60; ++tries) {
            auto s = detail::random_divisor_exact(C, rng);
            Jacobian<MQ> J(detail::fpoly_as<MQ>(C));
            Div<MQ> TD = J.two_torsion_divisor(MQ(C.roots[i]), MQ(C.roots[j]));
            Div<MQ> sum;
            try {
                sum = J.add(s.D, TD);
            } catch (const SpecialDivisor&) {
                continue;
            }
            auto b = kummer_map(fmq, sum);
            std::vector<std::vector<MQ>> mrows;
            detail::translation_rows(s.k, b, mrows);
            for (const auto& r : mrows) detail::expand_mq_row(r, rows);
            return;
        }
        throw DerivationError("derive_translation: sampling failed");
    };
    for (int round = 0; round < 4; ++round) {
        for (int s = 0; s < (round == 0 ? 8 : 3); ++s) add_sample();
        auto ker = detail::unique_kernel(rows, 16);
        if (!ker) continue;
        TranslationMatrix out = detail::finish_translation(T, *ker);
        // Fresh projective validation.
        for (int s = 0; s < 6;) {
            auto smp = detail::random_divisor_exact(C, rng);
            Jacobian<MQ> J(detail::fpoly_as<MQ>(C));
            Div<MQ> TD = J.two_torsion_divisor(MQ(C.roots[i]), MQ(C.roots[j]));
            Div<MQ> sum;
            try {
                sum = J.add(smp.D, TD);
            } catch (const SpecialDivisor&) {
                continue;
            }
            CTP_CHECK(proportional4(apply_matrix(out.M, smp.k), kummer_map(fmq, sum)),
                      "translation: fresh sample mismatch");
            ++s;
        }
        return out;
    }
    throw DerivationError("derive_translation: kernel never became one-dimensional");
}

// Modular route for the same matrix (cross-check only).
inline TranslationMatrix derive_translation_crt(const GenusTwoCurve& C, TwoTorsion T,
                                                std::mt19937_64& rng) {
    if (T.is_zero()) return derive_translation(C, T, rng);
    auto [ri, rj] = T.indices();
    for (size_t nprimes = 3; nprimes <= 9; nprimes += 2) {
        auto primes = detail::derivation_primes(C, nprimes, 1000000007ULL);
        std::vector<std::vector<uint64_t>> residues;
        std::optional<size_t> anchor;
        for (const auto& p : primes) {
            FpScope scope(to_u64(p));
            Poly<Fp> f = detail::fpoly_as<Fp>(C);
            Jacobian<Fp> J(f);
            auto fc = curve_coeffs<Fp>(C);
            Div<Fp> TD = J.two_torsion_divisor(Fp::from(C.roots[ri]), Fp::from(C.roots[rj]));
            std::vector<std::vector<Fp>> rows;
            int got = 0;
            for (int tries = 0; got < 10 && tries < 200; ++tries) {
                Div<Fp> D = detail::random_divisor_fp(f, rng);
                Div<Fp> sum;
                try {
                    sum = J.add(D, TD);
                } catch (const SpecialDivisor&) {
                    continue;
                }
                detail::translation_rows(kummer_map(fc, D), kummer_map(fc, sum), rows);
                ++got;
            }
            auto vec = detail::unique_kernel_fp(rows, 16, anchor);
            if (!vec) continue;
            residues.push_back(std::move(*vec));
        }
        if (residues.size() < 3) continue;
        std::vector<Int> used(primes.begin(), primes.begin() + residues.size());
        auto rec = detail::reconstruct_vector(residues, used);
        if (!rec) continue;
        return detail::finish_translation(T, detail::primitive_integer(*rec));
    }
    throw DerivationError("derive_translation_crt: reconstruction failed");
}

// ---------------------------------------------------------------------------
// Doubling forms.

namespace detail {

// The doubling forms are only determined modulo the surface ideal: adding a
// multiple of G to any of the four forms changes nothing on the surface, so
// the raw linear system has a five-dimensional kernel.  We fix the canonical
// representative whose coefficient at G's leading monomial vanishes in every
// form, which removes four unknowns and makes the kernel a line.
inline size_t quartic_anchor(const Quartic& G) {
    for (size_t m = 0; m < kQuarticTerms; ++m)
        if (G.c[m] != 0) return m;
    throw DerivationError("quartic_anchor: zero quartic");
}

// Cross-product equations tying the four unknown quartics to k(2X), with
// the anchored monomial dropped from each form.
template <class K>
void doubling_rows(const std::array<K, 4>& a, const std::array<K, 4>& b, size_t mstar,
                   std::vector<std::vector<K>>& rows) {
    auto mono = quartic_monomial_values(a);
    const size_t width = kQuarticTerms - 1;
    auto col = [&](int form, size_t m) { return form * width + (m < mstar ? m : m - 1); };
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            std::vector<K> row(4 * width, from_int<K>(0));
            for (size_t m = 0; m < kQuarticTerms; ++m) {
                if (m == mstar) continue;
                row[col(i, m)] = mono[m] * b[j];
                row[col(j, m)] = from_int<K>(0) - mono[m] * b[i];
            }
            rows.push_back(std::move(row));
        }
}

inline DoublingForms finish_doubling(const std::vector<Int>& vec, size_t mstar) {
    DoublingForms forms;
    const size_t width = kQuarticTerms - 1;
    for (int i = 0; i < 4; ++i)
        for (size_t m = 0; m < kQuarticTerms; ++m)
            forms.f[i][m] = m == mstar ? Int(0) : vec[i * width + (m < mstar ? m : m - 1)];
    return forms;
}

// Exact check: forms applied to k(X) match k(2X) projectively, with X and
// its Cantor double taken over a small multiquadratic field.
inline bool doubling_spot_check(const GenusTwoCurve& C, const DoublingForms& forms,
                                std::mt19937_64& rng, int count) {
    auto fmq = curve_coeffs<MQ>(C);
    Jacobian<MQ> J(detail::fpoly_as<MQ>(C));
    for (int s = 0; s < count;) {
        auto smp = detail::random_divisor_exact(C, rng);
        Div<MQ> twice;
        try {
            twice = J.add(smp.D, smp.D);
        } catch (const SpecialDivisor&) {
            continue;
        }
        if (!proportional4(forms.apply(smp.k), kummer_map(fmq, twice))) return false;
        ++s;
    }
    return true;
}

}  // namespace detail

// Derive the doubling forms through the modular route.  The 136-unknown
// system is too heavy for exact sampling on general curves, so kernels are
// computed modulo an escalating set of good primes and the reconstruction
// is certified by exact multiquadratic doubling checks.
inline DoublingForms derive_doubling(const GenusTwoCurve& C, const Quartic& G,
                                     std::mt19937_64& rng) {
    const size_t mstar = detail::quartic_anchor(G);
    const size_t cols = 4 * (kQuarticTerms - 1);
    std::vector<std::vector<uint64_t>> residues;
    std::vector<Int> used;
    std::optional<size_t> anchor;
    auto primes = detail::derivation_primes(C, 40, 1000000007ULL);
    size_t next = 0;
    for (size_t target = 4; target <= 40; target += (target < 10 ? 2 : 5)) {
        while (residues.size() < target && next < primes.size()) {
            const Int& p = primes[next++];
            FpScope scope(to_u64(p));
            Poly<Fp> f = detail::fpoly_as<Fp>(C);
            Jacobian<Fp> J(f);
            auto fc = curve_coeffs<Fp>(C);
            std::vector<std::vector<Fp>> rows;
            int got = 0;
            for (int tries = 0; got < 170 && tries < 3000; ++tries) {
                Div<Fp> D = detail::random_divisor_fp(f, rng);
                Div<Fp> twice;
                try {
                    twice = J.add(D, D);
                } catch (const SpecialDivisor&) {
                    continue;
                }
                detail::doubling_rows(kummer_map(fc, D), kummer_map(fc, twice), mstar, rows);
                ++got;
            }
            auto vec = detail::unique_kernel_fp(rows, cols, anchor);
            if (!vec) continue;
            residues.push_back(std::move(*vec));
            used.push_back(p);
        }
        if (residues.size() < target) break;
        auto rec = detail::reconstruct_vector(residues, used);
        if (!rec) continue;
        DoublingForms forms = detail::finish_doubling(detail::primitive_integer(*rec), mstar);
        if (detail::doubling_spot_check(C, forms, rng, 12)) return forms;
    }
    throw DerivationError("derive_doubling: reconstruction failed");
}

// Exact derivation of the same forms (practical only for curves with tiny
// coefficients; kept as the independent route for cross-checking).
inline DoublingForms derive_doubling_exact(const GenusTwoCurve& C, const Quartic& G,
                                           std::mt19937_64& rng) {
    const size_t mstar = detail::quartic_anchor(G);
    auto fmq = curve_coeffs<MQ>(C);
    Jacobian<MQ> J(detail::fpoly_as<MQ>(C));
    std::vector<std::vector<Rat>> rows;
    for (int round = 0; round < 4; ++round) {
        int want = round == 0 ? 16 : 4;
        for (int s = 0; s < want;) {
            auto smp = detail::random_divisor_exact(C, rng);
            Div<MQ> twice;
            try {
                twice = J.add(smp.D, smp.D);
            } catch (const SpecialDivisor&) {
                continue;
            }
            std::vector<std::vector<MQ>> mrows;
            detail::doubling_rows(smp.k, kummer_map(fmq, twice), mstar, mrows);
            for (const auto& r : mrows) detail::expand_mq_row(r, rows);
            ++s;
        }
        auto ker = detail::unique_kernel(rows, 4 * (kQuarticTerms - 1));
        if (!ker) continue;
        DoublingForms forms = detail::finish_doubling(*ker, mstar);
        CTP_CHECK(detail::doubling_spot_check(C, forms, rng, 8),
                  "doubling forms: exact route failed validation");
        return forms;
    }
    throw DerivationError("derive_doubling_exact: kernel never became one-dimensional");
}

// ---------------------------------------------------------------------------
// The per-curve model cache.

struct KummerModel {
    GenusTwoCurve C;
    Quartic G;
    DoublingForms dbl;
    std::map<unsigned, TranslationMatrix> M;  // keyed by canonical nonzero mask

    explicit KummerModel(GenusTwoCurve curve) : C(std::move(curve)) {}

    const TranslationMatrix& translation(TwoTorsion T) const {
        static const TranslationMatrix ident = [] {
            TranslationMatrix t;
            t.T = TwoTorsion::zero();
            t.M = Mat<Rat>::identity(4);
            t.c = 1;
            return t;
        }();
        if (T.is_zero()) return ident;
        auto it = M.find(T.mask);
        CTP_CHECK(it != M.end(), "translation matrix missing from model");
        return it->second;
    }

    std::array<Rat, 4> torsion_point(TwoTorsion T) const {
        if (T.is_zero()) return {Rat(0), Rat(0), Rat(0), Rat(1)};
        auto [i, j] = T.indices();
        Jacobian<Rat> J(C.fpoly());
        return kummer_map(C, J.two_torsion_divisor(C.roots[i], C.roots[j]));
    }

    static KummerModel derive(const GenusTwoCurve& C, std::mt19937_64& rng) {
        KummerModel model(C);
        model.G = derive_quartic(C, rng);
        model.dbl = derive_doubling(C, model.G, rng);
        for (unsigned m = 1; m < 64; ++m) {
            if (std::popcount(m) != 2) continue;
            TwoTorsion T = TwoTorsion::canonical(m);
            if (model.M.count(T.mask)) continue;
            model.M.emplace(T.mask, derive_translation(C, T, rng));
        }
        return model;
    }
};

// ---------------------------------------------------------------------------
// Halving 2-torsion into 4-torsion.

namespace detail {

// Nonzero classes commuting with T under the Weil pairing, one per coset of
// {0, T}.
inline std::vector<TwoTorsion> commuting_reps(TwoTorsion T) {
    std::vector<TwoTorsion> out;
    for (unsigned m = 1; m < 64; ++m) {
        if (std::popcount(m) != 2) continue;
        TwoTorsion A = TwoTorsion::canonical(m);
        if (A == T || A.is_zero()) continue;
        if (weil_pairing(A, T) != 1) continue;
        TwoTorsion other = A + T;
        bool seen = false;
        for (const auto& b : out)
            if (b == A || b == other) seen = true;
        if (!seen) out.push_back(A);
    }
    return out;
}

}  // namespace detail

// A 4-torsion preimage of T on the Kummer surface, with coordinates in the
// multiquadratic field F.  The image of T1 is a fixed point of translation
// by T, so it lies on one of the two eigenplanes of M_T; restricting the
// quartic to that plane gives a binary quartic whose roots are the four
// candidate images.  A commuting translation acts on those roots as a
// trace-zero Mobius involution, which pairs them off and linearizes the
// quartic into two nested square roots, both taken inside F.
inline std::array<MQ, 4> halve_two_torsion(const KummerModel& model, TwoTorsion T,
                                           const FieldPtr& F, std::mt19937_64& rng) {
    if (T.is_zero())
        return {MQ::zero(F), MQ::zero(F), MQ::zero(F), MQ::constant(F, Rat(1))};
    const TranslationMatrix& TM = model.translation(T);
    auto sc = mq_sqrt(MQ::constant(F, Rat(TM.c)));
    if (!sc) throw HalvingFailed("halving: sqrt of c_T is not in the field");
    auto kT = model.torsion_point(T);
    std::array<MQ, 4> kTmq{MQ(kT[0]), MQ(kT[1]), MQ(kT[2]), MQ(kT[3])};
    auto reps = detail::commuting_reps(T);

    for (int side = 0; side < 2; ++side) {
        MQ mu = side == 0 ? *sc : MQ(0) - *sc;
        Mat<MQ> Mmu(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                Mmu(i, j) = i == j ? MQ(TM.M(i, j)) - mu : MQ(TM.M(i, j));
        auto plane = nullspace(Mmu);
        if (plane.size() != 2) continue;
        // The plane basis can come out with rational entries; force every
        // coordinate into F so the square roots below search the whole field.
        for (auto& v : plane)
            for (auto& e : v) e = reembed(e, F);

        for (int attempt = 0; attempt < 12; ++attempt) {
            long s1 = 1 + long(rng() % 3), t1 = long(rng() % 3);
            long s2 = long(rng() % 3), t2 = 1 + long(rng() % 3);
            if (s1 * t2 == s2 * t1) continue;
            std::array<MQ, 4> p, q;
            for (int i = 0; i < 4; ++i) {
                p[i] = MQ(Rat(s1)) * plane[0][i] + MQ(Rat(t1)) * plane[1][i];
                q[i] = MQ(Rat(s2)) * plane[0][i] + MQ(Rat(t2)) * plane[1][i];
            }
            // g(alpha) = G(alpha p + q) as a degree-4 polynomial.
            Poly<MQ> g;
            {
                std::array<Poly<MQ>, 4> lin;
                for (int i = 0; i < 4; ++i) lin[i] = Poly<MQ>({q[i], p[i]});
                const auto& mono = quartic_monomials();
                for (size_t m = 0; m < kQuarticTerms; ++m) {
                    if (model.G.c[m] == 0) continue;
                    Poly<MQ> term({MQ(Rat(model.G.c[m]))});
                    for (int i = 0; i < 4; ++i)
                        for (int e = 0; e < mono[m][i]; ++e) term = term * lin[i];
                    g = g + term;
                }
            }
            if (g.degree() != 4 || g.coeff(0).is_zero()) continue;
            MQ lead = g.coeff(4);
            std::array<MQ, 5> gc;
            for (int i = 0; i <= 4; ++i) gc[i] = g.coeff(i) / lead;

            for (const auto& A : reps) {
                const Mat<Rat>& MA = model.translation(A).M;
                // Restriction of M_A to the plane: columns solve
                // M_A p = n11 p + n21 q, M_A q = n12 p + n22 q.
                Mat<MQ> B(4, 2);
                for (int i = 0; i < 4; ++i) {
                    B(i, 0) = p[i];
                    B(i, 1) = q[i];
                }
                auto MAp = apply_matrix(MA, p);
                auto MAq = apply_matrix(MA, q);
                auto col1 = solve(B, std::vector<MQ>(MAp.begin(), MAp.end()));
                auto col2 = solve(B, std::vector<MQ>(MAq.begin(), MAq.end()));
                if (!col1 || !col2) continue;
                MQ a = (*col1)[0], cc = (*col1)[1], b = (*col2)[0], d = (*col2)[1];
                if (!(a + d).is_zero() || cc.is_zero()) continue;

                // Roots pair off into Mobius orbits {r, r'} with
                // cc r r' - a (r + r') = b, so the orbit sums solve a
                // quadratic and each orbit is then split by one more root.
                MQ ssum = MQ(0) - gc[3];
                MQ m = gc[2] - (MQ(2) * b + a * ssum) / cc;
                auto sq1 = mq_sqrt(ssum * ssum - MQ(4) * m);
                if (!sq1) continue;
                for (int pick1 = 0; pick1 < 2; ++pick1) {
                    MQ e1 = (ssum + (pick1 ? MQ(0) - *sq1 : *sq1)) / MQ(2);
                    MQ e2 = (b + a * e1) / cc;
                    auto sq2 = mq_sqrt(e1 * e1 - MQ(4) * e2);
                    if (!sq2) continue;
                    for (int pick2 = 0; pick2 < 2; ++pick2) {
                        MQ alpha = (e1 + (pick2 ? MQ(0) - *sq2 : *sq2)) / MQ(2);
                        std::array<MQ, 4> k;
                        for (int i = 0; i < 4; ++i) k[i] = alpha * p[i] + q[i];
                        if (!model.G.eval(k).is_zero()) continue;
                        if (proportional4(model.dbl.apply(k), kTmq)) return k;
                    }
                }
            }
        }
    }
    throw HalvingFailed("halving: no preimage over the given field");
}

}  // namespace ctp
