// Exact arithmetic layer: squarefree reduction, factorization, CRT,
// rational reconstruction, Legendre/Tonelli, Hilbert symbols.
//
// The Hilbert symbol is validated two independent ways: against a
// brute-force solvability oracle for ternary diagonal forms over Z/p^3
// (odd p), and through the product formula over random rationals, which in
// particular pins down the dyadic case given the odd and real ones.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ctpair/factor.hpp"
#include "ctpair/fp.hpp"
#include "ctpair/hilbert.hpp"
#include "ctpair/rational.hpp"
#include "ctpair/squareclass.hpp"

using namespace ctp;

TEST_CASE("squarefree reduction fixtures", "[arith]") {
    CHECK(squarefree_reduce(Rat(18)) == 2);
    CHECK(squarefree_reduce(Rat(-12)) == -3);
    CHECK(squarefree_reduce(Rat(1, 11)) == 11);
    CHECK(squarefree_reduce(Rat(1)) == 1);
    CHECK(squarefree_reduce(Rat(-1)) == -1);
    CHECK(squarefree_reduce(Rat(49, 25)) == 1);
    CHECK(squarefree_reduce(Rat(-66)) == -66);
    CHECK(squarefree_reduce(Rat(25000)) == 10);
}

TEST_CASE("square class helpers", "[arith]") {
    CHECK(same_class(Rat(2), Rat(50)));
    CHECK(!same_class(Rat(2), Rat(-2)));
    CHECK(same_class(Rat(3, 7), Rat(21)));
    CHECK(class_mul(Int(6), Int(10)) == 15);
    CHECK(class_mul(Int(-6), Int(6)) == -1);
    CHECK(is_trivial_class(Rat(36, 49)));
}

TEST_CASE("integer roots and valuations", "[arith]") {
    CHECK(isqrt(Int(48)) == 6);
    CHECK(iroot(Int(1000000), 3) == 100);
    CHECK(iroot(Int(999999), 3) == 99);
    CHECK(is_square(Int("151115727451828646838272")) == false);
    CHECK(is_square(ipow(Int("123456789123456789"), 2)));
    CHECK(valuation(Int(48), Int(2)) == 4);
    CHECK(valuation(Rat(9, 16), Int(2)) == -4);
    CHECK(valuation(Rat(9, 16), Int(3)) == 2);
    CHECK(fmod(Int(-7), Int(3)) == 2);
    CHECK(smod(Int(7), Int(4)) == -1);
}

TEST_CASE("factorization round-trips", "[arith]") {
    std::mt19937_64 rng(12345);
    std::vector<Int> some_primes{2, 3, 5, 101, 1009, 65537, 10000019, Int("1000000000039")};
    for (int trial = 0; trial < 20; ++trial) {
        Int n = 1;
        std::map<Int, unsigned> expect;
        for (int k = 0; k < 4; ++k) {
            Int p = some_primes[rng() % some_primes.size()];
            unsigned e = 1 + rng() % 3;
            expect[p] += e;
            n *= ipow(p, e);
        }
        Factorization f = factor(n);
        REQUIRE(f.complete());
        CHECK(f.primes == expect);
    }
    // A perfect power of a large prime.
    Factorization f = factor(ipow(Int("1000000000000066600000000000001"), 3));
    CHECK(f.complete());
}

TEST_CASE("jacobi symbol agrees with Euler criterion", "[arith]") {
    std::mt19937_64 rng(7);
    for (uint64_t p : {3ull, 5ull, 7ull, 101ull, 10007ull, 1000003ull}) {
        for (int i = 0; i < 30; ++i) {
            uint64_t a = rng() % p;
            if (a == 0) continue;
            CHECK(jacobi(Int(a), Int(p)) == legendre_u64(a, p));
        }
    }
}

TEST_CASE("Tonelli-Shanks square roots", "[arith]") {
    std::mt19937_64 rng(99);
    for (uint64_t p : {3ull, 5ull, 13ull, 17ull, 10007ull, 1000003ull, 4294967311ull}) {
        int qr = 0;
        for (int i = 0; i < 40; ++i) {
            uint64_t a = rng() % p;
            auto r = sqrtmod(a, p);
            if (a != 0 && legendre_u64(a, p) == -1) {
                CHECK(!r.has_value());
            } else {
                REQUIRE(r.has_value());
                CHECK(mulmod(*r, *r, p) == a);
                ++qr;
            }
        }
        CHECK(qr > 0);
    }
}

TEST_CASE("CRT and rational reconstruction", "[arith]") {
    Int r = crt_pair(Int(2), Int(3), Int(3), Int(5));
    CHECK(r == 8);
    auto [x, m] = crt({{Int(1), Int(7)}, {Int(2), Int(11)}, {Int(5), Int(13)}});
    CHECK(m == 1001);
    CHECK(fmod(x, 7) == 1);
    CHECK(fmod(x, 11) == 2);
    CHECK(fmod(x, 13) == 5);

    std::mt19937_64 rng(5);
    Int M = 1;
    for (uint64_t p : {1000003ull, 1000033ull, 1000037ull}) M *= p;
    for (int i = 0; i < 25; ++i) {
        Int num = Int(rng() % 100000) - 50000;
        Int den = Int(1 + rng() % 100000);
        if (igcd(iabs(num), den) != 1 || num == 0) continue;
        if (igcd(den, M) != 1) continue;
        // residue = num * den^-1 mod M by extended Euclid.
        Int a0 = den % M, b0 = M, x0 = 1, x1 = 0;
        while (b0 != 0) {
            Int q = a0 / b0, t = a0 - q * b0;
            a0 = b0;
            b0 = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        Int residue = fmod(num * fmod(x0, M), M);
        auto rec = rational_reconstruct(residue, M);
        REQUIRE(rec.has_value());
        CHECK(*rec == Rat(num, den));
    }
}

namespace {

// Brute-force oracle: is a*x^2 + b*y^2 = z^2 solvable over Q_p?  For odd p
// and valuations of a, b in {0, 1} this is equivalent to a primitive zero
// mod p^3 (a unit partial derivative survives and Hensel applies).
bool ternary_solvable_mod_p3(long a, long b, uint64_t p) {
    uint64_t m = p * p * p;
    auto norm = [&](long v) { return static_cast<uint64_t>(((v % static_cast<long>(m)) + static_cast<long>(m)) % static_cast<long>(m)); };
    uint64_t A = norm(a), B = norm(b);
    std::vector<uint8_t> is_sq(m, 0);
    std::vector<uint8_t> is_unit_sq(m, 0);
    for (uint64_t z = 0; z < m; ++z) {
        uint64_t s = mulmod(z, z, m);
        is_sq[s] = 1;
        if (z % p != 0) is_unit_sq[s] = 1;
    }
    for (uint64_t x = 0; x < m; ++x) {
        uint64_t ax2 = mulmod(A, mulmod(x, x, m), m);
        for (uint64_t y = 0; y < m; ++y) {
            uint64_t v = (ax2 + mulmod(B, mulmod(y, y, m), m)) % m;
            bool xy_primitive = (x % p != 0) || (y % p != 0);
            if (xy_primitive ? is_sq[v] : is_unit_sq[v]) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("Hilbert symbol fixtures", "[arith]") {
    CHECK(hilbert_inf(Rat(-1), Rat(-1)) == -1);
    CHECK(hilbert_inf(Rat(-1), Rat(2)) == 1);
    CHECK(hilbert_symbol(Rat(-1), Rat(-1), Place::finite(2)) == -1);
    CHECK(hilbert_symbol(Rat(5), Rat(2), Place::finite(5)) == -1);
    CHECK(hilbert_symbol(Rat(2), Rat(7), Place::finite(7)) == 1);
    CHECK(hilbert_symbol(Rat(3), Rat(7), Place::finite(7)) == -1);
    // Bimultiplicative, symmetric, kills squares.
    CHECK(hilbert_symbol(Rat(12), Rat(5), Place::finite(5)) ==
          hilbert_symbol(Rat(3), Rat(5), Place::finite(5)));
    CHECK(hilbert_symbol(Rat(7, 9), Rat(14), Place::finite(2)) ==
          hilbert_symbol(Rat(7), Rat(14), Place::finite(2)));
}

TEST_CASE("Hilbert symbol against ternary form oracle at odd p", "[arith]") {
    std::mt19937_64 rng(2024);
    for (uint64_t p : {3ull, 5ull, 7ull}) {
        for (int trial = 0; trial < 12; ++trial) {
            long u = static_cast<long>(rng() % 20) - 10;
            long w = static_cast<long>(rng() % 20) - 10;
            if (u == 0 || w == 0) continue;
            long a = u * ((rng() & 1) ? static_cast<long>(p) : 1L);
            long b = w * ((rng() & 1) ? static_cast<long>(p) : 1L);
            if (a % static_cast<long>(p * p) == 0 || b % static_cast<long>(p * p) == 0) continue;
            int sym = hilbert_symbol(Rat(a), Rat(b), Place::finite(p));
            bool solvable = ternary_solvable_mod_p3(a, b, p);
            INFO("a=" << a << " b=" << b << " p=" << p);
            CHECK((sym == 1) == solvable);
        }
    }
}

TEST_CASE("Hilbert product formula over random rationals", "[arith]") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        Int an = Int(rng() % 2000) - 1000, ad = Int(1 + rng() % 50);
        Int bn = Int(rng() % 2000) - 1000, bd = Int(1 + rng() % 50);
        if (an == 0 || bn == 0) continue;
        Rat a(an, ad), b(bn, bd);
        int prod = hilbert_inf(a, b);
        auto [psa, cofa] = prime_support(a);
        auto [psb, cofb] = prime_support(b);
        REQUIRE(cofa * cofb == 1);
        std::vector<Int> ps = psa;
        for (const Int& p : psb)
            if (!std::count(ps.begin(), ps.end(), p)) ps.push_back(p);
        if (!std::count(ps.begin(), ps.end(), Int(2))) ps.push_back(Int(2));
        for (const Int& p : ps) prod *= hilbert_symbol(a, b, Place::finite(p));
        CHECK(prod == 1);
    }
}

TEST_CASE("Fp arithmetic basics", "[arith]") {
    FpScope scope(1000003);
    Fp a(12345), b(-7);
    CHECK((a * b + a) == Fp(12345 * -6));
    CHECK((a / b) * b == a);
    CHECK(Fp::from(Rat(22, 7)).v == mulmod(22, invmod(7, 1000003), 1000003));
    CHECK(Fp::from(Int(-3)) == Fp(-3));
}
