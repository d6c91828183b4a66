// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "g2eh/scalar.hpp"

namespace g2eh {

// Small dense row-major matrix.  Works for double and Rational.
template <class S> struct Mat {
  int rows = 0, cols = 0;
  std::vector<S> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, S(0)) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  S& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<S> col(int j) const {
    std::vector<S> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
};

template <class S> Mat<S> operator*(const Mat<S>& A, const Mat<S>& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch");
  Mat<S> C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const S& x = A(i, k);
      if (Num<S>::is_zero(x)) continue;
      for (int j = 0; j < B.cols; ++j) C(i, j) += x * B(k, j);
    }
  return C;
}

template <class S> Mat<S> operator+(Mat<S> A, const Mat<S>& B) {
  for (size_t i = 0; i < A.a.size(); ++i) A.a[i] += B.a[i];
  return A;
}
template <class S> Mat<S> operator-(Mat<S> A, const Mat<S>& B) {
  for (size_t i = 0; i < A.a.size(); ++i) A.a[i] -= B.a[i];
  return A;
}

template <class S> std::vector<S> operator*(const Mat<S>& A, const std::vector<S>& x) {
  std::vector<S> y(A.rows, S(0));
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) y[i] += A(i, j) * x[j];
  return y;
}

template <class S> bool equal(const Mat<S>& A, const Mat<S>& B, double tol = 0.0) {
  if (A.rows != B.rows || A.cols != B.cols) return false;
  for (size_t i = 0; i < A.a.size(); ++i)
    if (!Num<S>::is_zero(A.a[i] - B.a[i], tol)) return false;
  return true;
}

// Reduced row echelon form in place; returns pivot columns.
// Float pivots below tol*max|A| count as zero.
template <class S> std::vector<int> rref(Mat<S>& A, double tol = 1e-10) {
  double scale = 0;
  if constexpr (!Num<S>::exact)
    for (auto& x : A.a) scale = std::max(scale, std::fabs(x));
  const double thr = tol * (scale > 0 ? scale : 1.0);
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < A.cols && r < A.rows; ++c) {
    int p = -1;
    if constexpr (Num<S>::exact) {
      for (int i = r; i < A.rows; ++i)
        if (sgn(A(i, c)) != 0) { p = i; break; }
    } else {
      double best = thr;
      for (int i = r; i < A.rows; ++i)
        if (std::fabs(A(i, c)) > best) { best = std::fabs(A(i, c)); p = i; }
    }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < A.cols; ++j) std::swap(A(p, j), A(r, j));
    S inv = S(1) / A(r, c);
    for (int j = c; j < A.cols; ++j) A(r, j) *= inv;
    for (int i = 0; i < A.rows; ++i) {
      if (i == r) continue;
      S f = A(i, c);
      if (Num<S>::is_zero(f)) continue;
      for (int j = c; j < A.cols; ++j) A(i, j) -= f * A(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

template <class S> int rank(Mat<S> A, double tol = 1e-10) {
  return static_cast<int>(rref(A, tol).size());
}

// Columns of the returned matrix span ker A.
template <class S> Mat<S> kernel(Mat<S> A, double tol = 1e-10) {
  auto piv = rref(A, tol);
  std::vector<bool> is_piv(A.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> free;
  for (int c = 0; c < A.cols; ++c)
    if (!is_piv[c]) free.push_back(c);
  Mat<S> K(A.cols, static_cast<int>(free.size()));
  for (size_t f = 0; f < free.size(); ++f) {
    K(free[f], static_cast<int>(f)) = S(1);
    for (size_t r = 0; r < piv.size(); ++r) K(piv[r], static_cast<int>(f)) = -A(static_cast<int>(r), free[f]);
  }
  return K;
}

template <class S> Mat<S> inverse(const Mat<S>& A) {
  if (A.rows != A.cols) throw std::invalid_argument("inverse of non-square matrix");
  const int n = A.rows;
  Mat<S> W(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) W(i, j) = A(i, j);
    W(i, n + i) = S(1);
  }
  auto piv = rref(W, 1e-13);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Mat<S> R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = W(i, n + j);
  return R;
}

template <class S> S det(Mat<S> A) {
  if (A.rows != A.cols) throw std::invalid_argument("det of non-square matrix");
  const int n = A.rows;
  S d(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    if constexpr (Num<S>::exact) {
      for (int i = c; i < n; ++i)
        if (sgn(A(i, c)) != 0) { p = i; break; }
    } else {
      double best = 0;
      for (int i = c; i < n; ++i)
        if (std::fabs(A(i, c)) > best) { best = std::fabs(A(i, c)); p = i; }
    }
    if (p < 0) return S(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(A(p, j), A(c, j));
      d = -d;
    }
    d *= A(c, c);
    for (int i = c + 1; i < n; ++i) {
      S f = A(i, c) / A(c, c);
      if (Num<S>::is_zero(f)) continue;
      for (int j = c; j < n; ++j) A(i, j) -= f * A(c, j);
    }
  }
  return d;
}

// Does span(cols of X) equal span(cols of Y)?
template <class S> bool same_span(const Mat<S>& X, const Mat<S>& Y, double tol = 1e-10) {
  if (X.rows != Y.rows) return false;
  Mat<S> XY(X.rows, X.cols + Y.cols);
  for (int i = 0; i < X.rows; ++i) {
    for (int j = 0; j < X.cols; ++j) XY(i, j) = X(i, j);
    for (int j = 0; j < Y.cols; ++j) XY(i, X.cols + j) = Y(i, j);
  }
  int rx = rank(X, tol), ry = rank(Y, tol), rxy = rank(XY, tol);
  return rx == ry && ry == rxy;
}

}  // namespace g2eh
