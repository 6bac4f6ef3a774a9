// Dense exact linear algebra over an arbitrary field type K (rationals,
// word-size prime fields, multiquadratic extensions).  Everything is plain
// Gaussian elimination: matrices here are small (at most a few hundred rows)
// and exactness matters more than asymptotics.
#pragma once

#include <optional>
#include <vector>

#include "ctpair/common.hpp"

namespace ctp {

template <class K>
struct Mat {
    size_t n = 0, m = 0;
    std::vector<K> a;

    Mat() = default;
    Mat(size_t rows, size_t cols) : n(rows), m(cols), a(rows * cols, K(0)) {}

    static Mat identity(size_t d) {
        Mat I(d, d);
        for (size_t i = 0; i < d; ++i) I(i, i) = K(1);
        return I;
    }

    K& operator()(size_t i, size_t j) { return a[i * m + j]; }
    const K& operator()(size_t i, size_t j) const { return a[i * m + j]; }

    Mat transpose() const {
        Mat t(m, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < m; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        CTP_CHECK(x.n == y.n && x.m == y.m, "matrix add: shape mismatch");
        Mat r(x.n, x.m);
        for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        CTP_CHECK(x.n == y.n && x.m == y.m, "matrix sub: shape mismatch");
        Mat r(x.n, x.m);
        for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        CTP_CHECK(x.m == y.n, "matrix mul: shape mismatch");
        Mat r(x.n, y.m);
        for (size_t i = 0; i < x.n; ++i)
            for (size_t k = 0; k < x.m; ++k) {
                if (x(i, k) == K(0)) continue;
                for (size_t j = 0; j < y.m; ++j) r(i, j) = r(i, j) + x(i, k) * y(k, j);
            }
        return r;
    }
    friend Mat operator*(const K& c, const Mat& x) {
        Mat r(x.n, x.m);
        for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = c * x.a[i];
        return r;
    }
    friend std::vector<K> operator*(const Mat& x, const std::vector<K>& v) {
        CTP_CHECK(x.m == v.size(), "matrix-vector mul: shape mismatch");
        std::vector<K> r(x.n, K(0));
        for (size_t i = 0; i < x.n; ++i)
            for (size_t j = 0; j < x.m; ++j)
                if (!(x(i, j) == K(0))) r[i] = r[i] + x(i, j) * v[j];
        return r;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.n == y.n && x.m == y.m && x.a == y.a;
    }
    bool is_zero() const {
        for (const K& e : a)
            if (!(e == K(0))) return false;
        return true;
    }
};

// In-place reduced row echelon form.  Returns the rank; pivot columns are
// appended to *pivots when given.
template <class K>
size_t rref(Mat<K>& A, std::vector<size_t>* pivots = nullptr) {
    size_t r = 0;
    for (size_t c = 0; c < A.m && r < A.n; ++c) {
        size_t sel = r;
        while (sel < A.n && A(sel, c) == K(0)) ++sel;
        if (sel == A.n) continue;
        for (size_t j = 0; j < A.m; ++j) std::swap(A(sel, j), A(r, j));
        K inv = K(1) / A(r, c);
        for (size_t j = c; j < A.m; ++j) A(r, j) = A(r, j) * inv;
        for (size_t i = 0; i < A.n; ++i) {
            if (i == r || A(i, c) == K(0)) continue;
            K f = A(i, c);
            for (size_t j = c; j < A.m; ++j) A(i, j) = A(i, j) - f * A(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

template <class K>
size_t rank(Mat<K> A) {
    return rref(A);
}

// Basis of the right kernel {x : Ax = 0}.
template <class K>
std::vector<std::vector<K>> nullspace(Mat<K> A) {
    std::vector<size_t> piv;
    rref(A, &piv);
    std::vector<bool> is_piv(A.m, false);
    for (size_t c : piv) is_piv[c] = true;
    std::vector<std::vector<K>> basis;
    for (size_t c = 0; c < A.m; ++c) {
        if (is_piv[c]) continue;
        std::vector<K> v(A.m, K(0));
        v[c] = K(1);
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = K(0) - A(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class K>
K det(Mat<K> A) {
    CTP_CHECK(A.n == A.m, "det: not square");
    K d(1);
    for (size_t c = 0; c < A.n; ++c) {
        size_t sel = c;
        while (sel < A.n && A(sel, c) == K(0)) ++sel;
        if (sel == A.n) return K(0);
        if (sel != c) {
            for (size_t j = 0; j < A.m; ++j) std::swap(A(sel, j), A(c, j));
            d = K(0) - d;
        }
        d = d * A(c, c);
        K inv = K(1) / A(c, c);
        for (size_t i = c + 1; i < A.n; ++i) {
            if (A(i, c) == K(0)) continue;
            K f = A(i, c) * inv;
            for (size_t j = c; j < A.m; ++j) A(i, j) = A(i, j) - f * A(c, j);
        }
    }
    return d;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& A) {
    CTP_CHECK(A.n == A.m, "inverse: not square");
    Mat<K> W(A.n, 2 * A.n);
    for (size_t i = 0; i < A.n; ++i) {
        for (size_t j = 0; j < A.n; ++j) W(i, j) = A(i, j);
        W(i, A.n + i) = K(1);
    }
    if (rref(W) != A.n) return std::nullopt;
    Mat<K> R(A.n, A.n);
    for (size_t i = 0; i < A.n; ++i)
        for (size_t j = 0; j < A.n; ++j) R(i, j) = W(i, A.n + j);
    return R;
}

// One solution of Ax = b, or nullopt if inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& A, const std::vector<K>& b) {
    CTP_CHECK(A.n == b.size(), "solve: shape mismatch");
    Mat<K> W(A.n, A.m + 1);
    for (size_t i = 0; i < A.n; ++i) {
        for (size_t j = 0; j < A.m; ++j) W(i, j) = A(i, j);
        W(i, A.m) = b[i];
    }
    std::vector<size_t> piv;
    rref(W, &piv);
    if (!piv.empty() && piv.back() == A.m) return std::nullopt;
    std::vector<K> x(A.m, K(0));
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = W(i, A.m);
    return x;
}

// Does v lie in the row span of S?
template <class K>
bool in_rowspan(const Mat<K>& S, const std::vector<K>& v) {
    Mat<K> W(S.n + 1, S.m);
    for (size_t i = 0; i < S.n; ++i)
        for (size_t j = 0; j < S.m; ++j) W(i, j) = S(i, j);
    for (size_t j = 0; j < S.m; ++j) W(S.n, j) = v[j];
    return rank(W) == rank(Mat<K>(S));
}

template <class K>
std::vector<K> mat_vec_rows(const Mat<K>& A) {
    return A.a;
}

// Are two nonzero vectors proportional?
template <class K>
bool proportional(const std::vector<K>& x, const std::vector<K>& y) {
    CTP_CHECK(x.size() == y.size(), "proportional: length mismatch");
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            if (!(x[i] * y[j] == x[j] * y[i])) return false;
    bool xz = true, yz = true;
    for (auto& e : x) xz = xz && e == K(0);
    for (auto& e : y) yz = yz && e == K(0);
    return xz == yz;
}

}  // namespace ctp
