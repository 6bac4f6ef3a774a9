// Multiquadratic number fields Q(sqrt(g_1), ..., sqrt(g_r)) with squarefree
// independent generators.  Elements are coefficient vectors over the basis
// prod_{i in S} sqrt(g_i) indexed by bitmask S; the Galois group is
// elementary abelian and acts by sign flips, which is exactly the structure
// every descent step here needs.
//
// An element with a null field pointer is a plain rational constant; ops
// promote it into the other operand's field.  That convention lets the
// generic Mat<K> / Poly<K> templates run over MQ unchanged.
#pragma once

#include <bit>
#include <memory>
#include <vector>

#include "ctpair/common.hpp"
#include "ctpair/rational.hpp"
#include "ctpair/squareclass.hpp"

namespace ctp {

struct MQField {
    std::vector<Int> gens;  // squarefree, classes independent in Q*/Q*^2

    size_t r() const { return gens.size(); }
    size_t dim() const { return size_t(1) << gens.size(); }

    // prod_{i in S} g_i for a basis index S.
    Int subset_product(unsigned S) const {
        Int p = 1;
        for (size_t i = 0; i < gens.size(); ++i)
            if (S >> i & 1) p *= gens[i];
        return p;
    }
};

using FieldPtr = std::shared_ptr<const MQField>;

class MQ {
  public:
    FieldPtr F;           // null: rational constant in c_[0]
    std::vector<Rat> c_;  // size 1 (null field) or F->dim()

    MQ() : c_{Rat(0)} {}
    MQ(int v) : c_{Rat(v)} {}
    explicit MQ(Rat v) : c_{std::move(v)} {}
    explicit MQ(const Int& v) : c_{Rat(v)} {}
    MQ(FieldPtr f, std::vector<Rat> coeffs) : F(std::move(f)), c_(std::move(coeffs)) {
        CTP_CHECK(!F || c_.size() == F->dim(), "MQ: wrong coefficient count");
    }

    static MQ zero(const FieldPtr& f) { return constant(f, Rat(0)); }
    static MQ constant(const FieldPtr& f, const Rat& v) {
        std::vector<Rat> c(f->dim(), Rat(0));
        c[0] = v;
        return MQ(f, std::move(c));
    }
    static MQ basis(const FieldPtr& f, unsigned S) {
        std::vector<Rat> c(f->dim(), Rat(0));
        c[S] = 1;
        return MQ(f, std::move(c));
    }

    bool in_field(const FieldPtr& f) const { return !F || F == f; }

    MQ promoted(const FieldPtr& f) const {
        if (F == f) return *this;
        CTP_CHECK(!F, "MQ: mixing elements of different fields");
        return constant(f, c_[0]);
    }

    bool is_zero() const {
        for (const Rat& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    const Rat& rational_part() const { return c_[0]; }
    Rat as_rational() const {
        CTP_CHECK(is_rational(), "MQ: not rational");
        return c_[0];
    }
    // Coefficient against the subset-product basis of the attached field;
    // index 0 is the rational part.
    Rat component(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    size_t dim() const { return c_.size(); }

    friend MQ operator+(const MQ& a, const MQ& b) {
        if (a.F != b.F) {
            FieldPtr f = a.F ? a.F : b.F;
            return a.promoted(f) + b.promoted(f);
        }
        std::vector<Rat> r(a.c_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] + b.c_[i];
        return MQ(a.F, std::move(r));
    }
    friend MQ operator-(const MQ& a, const MQ& b) {
        if (a.F != b.F) {
            FieldPtr f = a.F ? a.F : b.F;
            return a.promoted(f) - b.promoted(f);
        }
        std::vector<Rat> r(a.c_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] - b.c_[i];
        return MQ(a.F, std::move(r));
    }
    MQ operator-() const {
        std::vector<Rat> r(c_.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = -c_[i];
        return MQ(F, std::move(r));
    }
    friend MQ operator*(const MQ& a, const MQ& b) {
        if (a.F != b.F) {
            FieldPtr f = a.F ? a.F : b.F;
            return a.promoted(f) * b.promoted(f);
        }
        if (!a.F) return MQ(a.c_[0] * b.c_[0]);
        size_t d = a.c_.size();
        std::vector<Rat> r(d, Rat(0));
        for (unsigned S = 0; S < d; ++S) {
            if (a.c_[S] == 0) continue;
            for (unsigned T = 0; T < d; ++T) {
                if (b.c_[T] == 0) continue;
                Rat term = a.c_[S] * b.c_[T];
                unsigned common = S & T;
                if (common) term *= Rat(a.F->subset_product(common));
                r[S ^ T] += term;
            }
        }
        return MQ(a.F, std::move(r));
    }
    friend MQ operator/(const MQ& a, const MQ& b) { return a * b.inverse(); }
    friend bool operator==(const MQ& a, const MQ& b) { return (a - b).is_zero(); }
    friend bool operator!=(const MQ& a, const MQ& b) { return !(a == b); }

    // Galois element indexed by mask: sqrt(g_i) -> -sqrt(g_i) for set bits.
    MQ conj(unsigned mask) const {
        if (!F) return *this;
        std::vector<Rat> r = c_;
        for (unsigned S = 0; S < r.size(); ++S)
            if (std::popcount(S & mask) & 1) r[S] = -r[S];
        return MQ(F, std::move(r));
    }

    // Norm down to Q by folding one generator at a time.
    Rat norm() const {
        if (!F) return c_[0];
        MQ x = *this;
        for (size_t i = 0; i < F->r(); ++i) x = x * x.conj(1u << i);
        // All non-rational coordinates have cancelled.
        CTP_CHECK(x.is_rational(), "norm: fold left residue");
        return x.c_[0];
    }

    MQ inverse() const {
        CTP_CHECK(!is_zero(), "MQ: inverse of zero");
        if (!F) return MQ(Rat(1) / c_[0]);
        // x^-1 = conj(x) * (x * conj(x))^-1, recursing into the subfield
        // where the product lives.
        MQ x = *this, acc = MQ::constant(F, Rat(1));
        for (size_t i = 0; i < F->r(); ++i) {
            MQ cx = x.conj(1u << i);
            acc = acc * cx;
            x = x * cx;
        }
        CTP_CHECK(x.is_rational(), "inverse: fold left residue");
        Rat n = x.c_[0];
        std::vector<Rat> r = acc.c_;
        for (Rat& e : r) e /= n;
        return MQ(F, std::move(r));
    }
};

// Build the multiquadratic field generated by the square classes of the
// given rationals, dropping dependent ones.  Returns the field and, for each
// input, its square root expressed in that field.
struct FieldWithRoots {
    FieldPtr field;
    std::vector<MQ> roots;  // roots[i]^2 == inputs[i]
};

inline FieldWithRoots make_field(const std::vector<Rat>& inputs) {
    auto fld = std::make_shared<MQField>();
    // Subgroup of Q*/Q*^2 generated so far: squarefree class -> basis mask.
    std::vector<std::pair<Int, unsigned>> group{{Int(1), 0u}};
    std::vector<unsigned> masks;
    for (const Rat& x : inputs) {
        CTP_CHECK(x != 0, "make_field: zero input");
        Int sf = squarefree_reduce(x);
        unsigned mask = 0;
        bool found = false;
        for (auto& [cls, m] : group)
            if (cls == sf) {
                mask = m;
                found = true;
                break;
            }
        if (!found) {
            mask = 1u << fld->gens.size();
            fld->gens.push_back(sf);
            size_t old = group.size();
            for (size_t i = 0; i < old; ++i)
                group.emplace_back(class_mul(group[i].first, sf), group[i].second | mask);
        }
        masks.push_back(mask);
    }
    FieldWithRoots out;
    out.field = fld;
    for (size_t i = 0; i < inputs.size(); ++i) {
        // basis(mask)^2 = subset_product(mask), which is the class of the
        // input times a square; the scale absorbs both square parts.
        Rat ratio = inputs[i] / Rat(fld->subset_product(masks[i]));
        out.roots.push_back(MQ(sqrt_exact(ratio)) * MQ::basis(out.field, masks[i]));
    }
    for (size_t i = 0; i < inputs.size(); ++i)
        CTP_CHECK((out.roots[i] * out.roots[i]).as_rational() == inputs[i],
                  "make_field: root verification failed");
    return out;
}

// Extend a field by one more rational square class.  Elements of the old
// field re-embed by index: old mask bits keep their positions.
struct FieldExtension {
    FieldPtr field;   // possibly the same object as the input field
    MQ root;          // sqrt of the new input inside `field`
    bool grew;
};

inline MQ reembed(const MQ& x, const FieldPtr& big) {
    if (!x.F) return x.promoted(big);
    if (x.F == big) return x;
    // Old generators must be a prefix of the new ones.
    CTP_CHECK(x.F->r() <= big->r(), "reembed: target field too small");
    for (size_t i = 0; i < x.F->r(); ++i)
        CTP_CHECK(x.F->gens[i] == big->gens[i], "reembed: incompatible fields");
    std::vector<Rat> c(big->dim(), Rat(0));
    for (unsigned S = 0; S < x.c_.size(); ++S) c[S] = x.c_[S];
    return MQ(big, std::move(c));
}

inline FieldExtension extend_field(const FieldPtr& f, const Rat& x) {
    CTP_CHECK(x != 0, "extend_field: zero");
    Int sf = squarefree_reduce(x);
    // Already representable?
    for (unsigned S = 0; S < f->dim(); ++S) {
        Int sp = f->subset_product(S);
        if (squarefree_reduce(Rat(sp)) == sf)
            return {f, MQ(sqrt_exact(x / Rat(sp))) * MQ::basis(f, S), false};
    }
    auto nf = std::make_shared<MQField>(*f);
    nf->gens.push_back(sf);
    unsigned newbit = 1u << f->r();
    return {nf, MQ(sqrt_exact(x / Rat(sf))) * MQ::basis(nf, newbit), true};
}

// Square root within the field: returns y with y*y == x, or nullopt when x
// is not a square in F.  Recursive over the generator tower; at each level
// x = a + b sqrt(g) needs u^2 = (a ± sqrt(N)) / 2 with N = a^2 - g b^2 the
// relative norm, so the search branches on signs and is backtracking.
namespace detail {

struct TowerView {
    // Coefficients of an element of Q(g_0..g_{k-1}) as a flat vector of
    // length 2^k (prefix of the ambient coefficient vector layout).
    static std::pair<std::vector<Rat>, std::vector<Rat>> split(const std::vector<Rat>& c) {
        size_t h = c.size() / 2;
        std::vector<Rat> lo(c.begin(), c.begin() + h), hi(c.begin() + h, c.end());
        return {lo, hi};
    }
    static std::vector<Rat> join(const std::vector<Rat>& lo, const std::vector<Rat>& hi) {
        std::vector<Rat> c = lo;
        c.insert(c.end(), hi.begin(), hi.end());
        return c;
    }
    static bool zero(const std::vector<Rat>& c) {
        for (const Rat& x : c)
            if (x != 0) return false;
        return true;
    }
    static std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b,
                                const std::vector<Int>& gens, size_t k) {
        std::vector<Rat> r(size_t(1) << k, Rat(0));
        for (unsigned S = 0; S < r.size(); ++S) {
            if (a[S] == 0) continue;
            for (unsigned T = 0; T < r.size(); ++T) {
                if (b[T] == 0) continue;
                Rat term = a[S] * b[T];
                unsigned common = S & T;
                for (size_t i = 0; i < k; ++i)
                    if (common >> i & 1) term *= Rat(gens[i]);
                r[S ^ T] += term;
            }
        }
        return r;
    }
    static std::vector<Rat> sub(std::vector<Rat> a, const std::vector<Rat>& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
        return a;
    }
    static std::vector<Rat> add(std::vector<Rat> a, const std::vector<Rat>& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    }
    static std::vector<Rat> scale(std::vector<Rat> a, const Rat& s) {
        for (Rat& x : a) x *= s;
        return a;
    }
};

// Square root of the element with coefficients c in Q(g_0..g_{k-1}).
inline bool tower_sqrt(const std::vector<Rat>& c, const std::vector<Int>& gens, size_t k,
                       std::vector<Rat>& out) {
    using TV = TowerView;
    if (k == 0) {
        if (c[0] < 0 || !is_square(c[0])) return false;
        out = {sqrt_exact(c[0])};
        return true;
    }
    auto [a, b] = TV::split(c);  // x = a + b*sqrt(g_{k-1})
    const Int& g = gens[k - 1];
    if (TV::zero(b)) {
        // Either y in the subfield with y^2 = a, or y = v*sqrt(g), v^2 = a/g.
        std::vector<Rat> u;
        if (tower_sqrt(a, gens, k - 1, u)) {
            out = TV::join(u, std::vector<Rat>(u.size(), Rat(0)));
            return true;
        }
        std::vector<Rat> ag = TV::scale(a, Rat(1) / Rat(g));
        if (tower_sqrt(ag, gens, k - 1, u)) {
            out = TV::join(std::vector<Rat>(u.size(), Rat(0)), u);
            return true;
        }
        return false;
    }
    // N = a^2 - g*b^2 must be a square s in the subfield; then
    // u^2 = (a+s)/2 or (a-s)/2, and v = b/(2u).
    std::vector<Rat> a2 = TV::mul(a, a, gens, k - 1);
    std::vector<Rat> b2 = TV::mul(b, b, gens, k - 1);
    std::vector<Rat> N = TV::sub(a2, TV::scale(b2, Rat(g)));
    std::vector<Rat> s;
    if (!tower_sqrt(N, gens, k - 1, s)) return false;
    for (int sign = 0; sign < 2; ++sign) {
        std::vector<Rat> cand = sign ? TV::sub(a, s) : TV::add(a, s);
        cand = TV::scale(cand, Rat(1, 2));
        std::vector<Rat> u;
        if (!tower_sqrt(cand, gens, k - 1, u)) continue;
        if (TV::zero(u)) continue;
        // v = b / (2u): invert u in the subfield via MQ machinery.
        auto sub = std::make_shared<MQField>();
        sub->gens.assign(gens.begin(), gens.begin() + (k - 1));
        MQ U(sub, u), B(sub, b);
        MQ V = B * U.inverse() * MQ(Rat(1, 2));
        out = TV::join(u, V.c_);
        return true;
    }
    return false;
}

}  // namespace detail

inline std::optional<MQ> mq_sqrt(const MQ& x) {
    if (!x.F) {
        if (x.c_[0] < 0 || !is_square(x.c_[0])) return std::nullopt;
        return MQ(sqrt_exact(x.c_[0]));
    }
    if (x.is_zero()) return MQ::zero(x.F);
    std::vector<Rat> out;
    if (!detail::tower_sqrt(x.c_, x.F->gens, x.F->r(), out)) return std::nullopt;
    MQ y(x.F, std::move(out));
    CTP_CHECK(y * y == x, "mq_sqrt: verification failed");
    return y;
}

// Projective rationalization: scale a coordinate vector by the inverse of
// its first nonzero entry; if every entry lands in Q, clear denominators to
// a primitive integer vector.  Fails (nullopt) when some ratio is genuinely
// irrational.
inline std::optional<std::vector<Int>> mq_rationalize(const std::vector<MQ>& v) {
    size_t lead = v.size();
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) {
            lead = i;
            break;
        }
    CTP_CHECK(lead < v.size(), "mq_rationalize: zero vector");
    MQ inv = v[lead].inverse();
    std::vector<Rat> q(v.size(), Rat(0));
    for (size_t i = 0; i < v.size(); ++i) {
        MQ s = v[i] * inv;
        if (!s.is_rational()) return std::nullopt;
        q[i] = s.rational_part();
    }
    Int l = 1;
    for (const Rat& x : q) l = ilcm(l, denom(x));
    std::vector<Int> zi(v.size());
    Int g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        zi[i] = numer(q[i]) * (l / denom(q[i]));
        g = igcd(g, zi[i]);
    }
    for (Int& x : zi) x /= g;
    return zi;
}

}  // namespace ctp
