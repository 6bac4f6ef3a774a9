// Multiquadratic field arithmetic, Galois action, square roots, and
// projective rationalization.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ctpair/linalg.hpp"
#include "ctpair/mquad.hpp"

using namespace ctp;

namespace {

MQ random_elem(std::mt19937_64& rng, const FieldPtr& F, int span = 5) {
    std::vector<Rat> c(F->dim());
    for (auto& x : c) x = Rat(static_cast<long>(rng() % (2 * span + 1)) - span);
    return MQ(F, std::move(c));
}

}  // namespace

TEST_CASE("field construction drops dependent generators", "[mquad]") {
    auto fw = make_field({Rat(2), Rat(3), Rat(6), Rat(12)});
    CHECK(fw.field->r() == 2);
    // sqrt(6) = sqrt(2)*sqrt(3), sqrt(12) = 2 sqrt(3) up to the basis choice.
    CHECK(fw.roots[2] == fw.roots[0] * fw.roots[1]);
    CHECK(fw.roots[3] * fw.roots[3] == MQ(12));
    auto fw2 = make_field({Rat(8), Rat(-1), Rat(-2)});
    CHECK(fw2.field->r() == 2);
    for (size_t i = 0; i < 3; ++i) CHECK(fw2.roots[i] * fw2.roots[i] == MQ(std::vector<Rat>{Rat(8), Rat(-1), Rat(-2)}[i]));
    // All trivial classes give the rational field.
    auto fw3 = make_field({Rat(4), Rat(9, 16)});
    CHECK(fw3.field->r() == 0);
    CHECK(fw3.roots[0].as_rational() == 2);
    CHECK(fw3.roots[1].as_rational() == Rat(3, 4));
}

TEST_CASE("basic identities in Q(sqrt2, sqrt3)", "[mquad]") {
    auto fw = make_field({Rat(2), Rat(3)});
    MQ s2 = fw.roots[0], s3 = fw.roots[1];
    MQ x = s2 + s3;
    CHECK(x * x == MQ(5) + MQ(2) * s2 * s3);
    CHECK((s2 * s3) * (s2 * s3) == MQ(6));
    // (sqrt2+sqrt3)(sqrt3-sqrt2) = 1
    CHECK(x * (s3 - s2) == MQ(1));
    CHECK(x.inverse() == s3 - s2);
}

TEST_CASE("inverse, norm, and Galois action", "[mquad]") {
    std::mt19937_64 rng(21);
    auto fw = make_field({Rat(2), Rat(-3), Rat(5)});
    const FieldPtr& F = fw.field;
    REQUIRE(F->r() == 3);
    for (int t = 0; t < 10; ++t) {
        MQ x = random_elem(rng, F);
        if (x.is_zero()) continue;
        CHECK(x * x.inverse() == MQ(1));
        MQ y = random_elem(rng, F);
        // Norm is multiplicative.
        CHECK((x * y).norm() == x.norm() * y.norm());
        // Each Galois element is a ring homomorphism.
        for (unsigned m = 0; m < 8; ++m) {
            CHECK((x * y).conj(m) == x.conj(m) * y.conj(m));
            CHECK((x + y).conj(m) == x.conj(m) + y.conj(m));
        }
    }
    // Norm equals the product over the full Galois orbit.
    MQ x = random_elem(rng, F);
    MQ prod = MQ::constant(F, Rat(1));
    for (unsigned m = 0; m < 8; ++m) prod = prod * x.conj(m);
    CHECK(prod == MQ(x.norm()));
}

TEST_CASE("rational constants promote across fields", "[mquad]") {
    auto fw = make_field({Rat(7)});
    MQ s7 = fw.roots[0];
    MQ c = MQ(3);  // no field attached
    CHECK(c * s7 + s7 == MQ(4) * s7);
    CHECK((MQ(1) / s7) * s7 == MQ(1));
    CHECK(MQ(0) == MQ::zero(fw.field));
}

TEST_CASE("square roots inside a field", "[mquad]") {
    std::mt19937_64 rng(22);
    auto fw = make_field({Rat(2), Rat(3)});
    const FieldPtr& F = fw.field;
    for (int t = 0; t < 12; ++t) {
        MQ y = random_elem(rng, F);
        MQ x = y * y;
        auto r = mq_sqrt(x);
        REQUIRE(r.has_value());
        CHECK(*r * *r == x);
    }
    // Non-squares are rejected: sqrt(2) has no square root in Q(sqrt2,sqrt3).
    CHECK(!mq_sqrt(fw.roots[0]).has_value());
    CHECK(!mq_sqrt(MQ(-1).promoted(F)).has_value());
    // A rational square embedded in the field.
    auto r = mq_sqrt(MQ::constant(F, Rat(49, 4)));
    REQUIRE(r.has_value());
    CHECK(*r * *r == MQ(Rat(49, 4)));
    // Deeper tower.
    auto fw2 = make_field({Rat(2), Rat(-3), Rat(5), Rat(-7)});
    for (int t = 0; t < 6; ++t) {
        MQ y = random_elem(rng, fw2.field, 3);
        auto rr = mq_sqrt(y * y);
        REQUIRE(rr.has_value());
        CHECK(*rr * *rr == y * y);
    }
}

TEST_CASE("field extension and reembedding", "[mquad]") {
    auto fw = make_field({Rat(2), Rat(3)});
    // 6 is already represented.
    auto ext1 = extend_field(fw.field, Rat(24));
    CHECK(!ext1.grew);
    CHECK(ext1.root * ext1.root == MQ(24));
    // 5 is new.
    auto ext2 = extend_field(fw.field, Rat(5));
    CHECK(ext2.grew);
    CHECK(ext2.field->r() == 3);
    CHECK(ext2.root * ext2.root == MQ(5));
    MQ old = fw.roots[0] + fw.roots[1];
    MQ re = reembed(old, ext2.field);
    CHECK(re * re == reembed(old * old, ext2.field));
    CHECK(re + ext2.root == ext2.root + re);
}

TEST_CASE("projective rationalization", "[mquad]") {
    auto fw = make_field({Rat(3)});
    MQ s3 = fw.roots[0];
    // (2 sqrt3, 4 sqrt3, sqrt3/3) is projectively (6, 12, 1).
    auto v = mq_rationalize({MQ(2) * s3, MQ(4) * s3, MQ(Rat(1, 3)) * s3});
    REQUIRE(v.has_value());
    CHECK(*v == std::vector<Int>{6, 12, 1});
    // Mixed irrational ratios fail.
    auto w = mq_rationalize({s3, MQ(1).promoted(fw.field)});
    CHECK(!w.has_value());
    // Leading zeros are skipped.
    auto u = mq_rationalize({MQ::zero(fw.field), s3, MQ(7) * s3});
    REQUIRE(u.has_value());
    CHECK(*u == std::vector<Int>{0, 1, 7});
}

TEST_CASE("matrices over a multiquadratic field", "[mquad]") {
    auto fw = make_field({Rat(2)});
    MQ s2 = fw.roots[0];
    Mat<MQ> A(2, 2);
    A(0, 0) = MQ(1) + s2;
    A(0, 1) = MQ(1);
    A(1, 0) = MQ(3);
    A(1, 1) = MQ(1) - s2;
    // det = (1+s2)(1-s2) - 3 = 1-2-3 = -4
    CHECK(det(A) == MQ(-4));
    auto inv = inverse(A);
    REQUIRE(inv.has_value());
    CHECK(A * *inv == Mat<MQ>::identity(2));
}
