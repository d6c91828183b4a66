// SPDX-License-Identifier: MIT
//
// Dense exterior algebra on R^n, n <= 7.  Basis k-forms dx^I are indexed by
// strictly increasing multi-indices I in lexicographic order.  Internally a
// multi-index is a bitmask (bit i <-> dx_{i+1}).
#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "g2eh/linalg.hpp"
#include "g2eh/scalar.hpp"

namespace g2eh {

constexpr int kMaxDim = 7;

struct Basis {
  int n = 0, k = 0;
  std::vector<uint8_t> masks;   // position -> mask
  std::array<int, 128> pos{};   // mask -> position, -1 if wrong degree

  static const Basis& get(int n, int k);
  int size() const { return static_cast<int>(masks.size()); }
};

int binom(int n, int k);
// Sign of dx^A ^ dx^B -> dx^{A|B}; 0 if A,B overlap.
int merge_sign(uint8_t A, uint8_t B);
// 1-based index list of a mask, e.g. "145"
std::string mask_label(uint8_t m);

template <class S> struct KForm {
  int n = 0, k = 0;
  std::vector<S> c;

  KForm() = default;
  KForm(int n_, int k_) : n(n_), k(k_), c(Basis::get(n_, k_).size(), S(0)) {}

  static KForm zero(int n, int k) { return KForm(n, k); }
  // dx_{i1} ^ ... with 1-based indices in any order (sign included)
  static KForm dx(int n, std::initializer_list<int> idx, S coeff = S(1)) {
    KForm f(n, static_cast<int>(idx.size()));
    uint8_t m = 0;
    int sgn_ = 1;
    for (int i : idx) {
      if (i < 1 || i > n) throw std::out_of_range("dx index");
      uint8_t b = static_cast<uint8_t>(1u << (i - 1));
      int s = merge_sign(m, b);
      if (s == 0) return f;
      sgn_ *= s;
      m |= b;
    }
    f.at(m) = sgn_ > 0 ? coeff : S(-coeff);
    return f;
  }
  static KForm scalar(int n, S v) {
    KForm f(n, 0);
    f.c[0] = v;
    return f;
  }

  const Basis& basis() const { return Basis::get(n, k); }
  int size() const { return static_cast<int>(c.size()); }
  S& at(uint8_t m) { return c[basis().pos[m]]; }
  const S& at(uint8_t m) const { return c[basis().pos[m]]; }
  uint8_t mask(int i) const { return basis().masks[i]; }

  bool is_zero(double tol = 0.0) const {
    for (auto& x : c)
      if (!Num<S>::is_zero(x, tol)) return false;
    return true;
  }

  KForm& operator+=(const KForm& o) {
    check_same(o);
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_same(o);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  KForm& operator*=(const S& s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  KForm operator-() const {
    KForm r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(const S& s, KForm a) { return a *= s; }
  friend KForm operator*(KForm a, const S& s) { return a *= s; }
  friend bool operator==(const KForm& a, const KForm& b) {
    return a.n == b.n && a.k == b.k && a.c == b.c;
  }

  void check_same(const KForm& o) const {
    if (n != o.n) throw std::invalid_argument("forms live on different spaces");
    if (k != o.k) throw std::invalid_argument("degree mismatch");
  }

  // Euclidean coefficient norm (the g0 norm on an orthonormal basis).
  double flat_norm() const {
    double s = 0;
    for (auto& x : c) {
      double d = Num<S>::to_double(x);
      s += d * d;
    }
    return std::sqrt(s);
  }

  std::string str() const {
    std::string out;
    for (int i = 0; i < size(); ++i) {
      if (Num<S>::is_zero(c[i])) continue;
      if (!out.empty()) out += " + ";
      out += "(" + Num<S>::str(c[i]) + ")dx" + mask_label(mask(i));
    }
    return out.empty() ? "0" : out;
  }
};

template <class To, class From> KForm<To> convert(const KForm<From>& f) {
  KForm<To> r(f.n, f.k);
  for (int i = 0; i < f.size(); ++i) {
    if constexpr (std::is_same_v<To, double>)
      r.c[i] = Num<From>::to_double(f.c[i]);
    else
      r.c[i] = To(f.c[i]);
  }
  return r;
}

template <class S> KForm<S> wedge(const KForm<S>& a, const KForm<S>& b) {
  if (a.n != b.n) throw std::invalid_argument("wedge: forms live on different spaces");
  if (a.k + b.k > a.n) throw std::invalid_argument("wedge: degree overflow");
  KForm<S> r(a.n, a.k + b.k);
  for (int i = 0; i < a.size(); ++i) {
    if (Num<S>::is_zero(a.c[i])) continue;
    uint8_t A = a.mask(i);
    for (int j = 0; j < b.size(); ++j) {
      if (Num<S>::is_zero(b.c[j])) continue;
      uint8_t B = b.mask(j);
      int s = merge_sign(A, B);
      if (s == 0) continue;
      if (s > 0)
        r.at(A | B) += a.c[i] * b.c[j];
      else
        r.at(A | B) -= a.c[i] * b.c[j];
    }
  }
  return r;
}

// Contraction v . a with a vector v (components in the coordinate basis).
template <class S> KForm<S> interior(const std::vector<S>& v, const KForm<S>& a) {
  if (static_cast<int>(v.size()) != a.n) throw std::invalid_argument("interior: vector dimension");
  if (a.k == 0) throw std::invalid_argument("interior: degree 0 input");
  KForm<S> r(a.n, a.k - 1);
  for (int i = 0; i < a.size(); ++i) {
    if (Num<S>::is_zero(a.c[i])) continue;
    uint8_t m = a.mask(i);
    int p = 0;
    for (int b = 0; b < a.n; ++b) {
      if (!(m >> b & 1)) continue;
      if (!Num<S>::is_zero(v[b])) {
        S term = v[b] * a.c[i];
        if (p % 2) term = -term;
        r.at(static_cast<uint8_t>(m & ~(1u << b))) += term;
      }
      ++p;
    }
  }
  return r;
}

template <class S> std::vector<S> unit_vector(int n, int i) {
  std::vector<S> v(n, S(0));
  v[i] = S(1);
  return v;
}

// k-th compound matrix: entry (I,J) = det M[I,J] over basis multi-indices.
template <class S> Mat<S> compound(const Mat<S>& M, int k) {
  const int n = M.rows;
  const Basis& B = Basis::get(n, k);
  Mat<S> C(B.size(), B.size());
  bool diagonal = true;
  for (int i = 0; i < n && diagonal; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !Num<S>::is_zero(M(i, j))) { diagonal = false; break; }
  for (int I = 0; I < B.size(); ++I) {
    std::vector<int> ri;
    for (int b = 0; b < n; ++b)
      if (B.masks[I] >> b & 1) ri.push_back(b);
    if (diagonal) {
      S p(1);
      for (int r : ri) p *= M(r, r);
      C(I, I) = p;
      continue;
    }
    for (int J = 0; J < B.size(); ++J) {
      std::vector<int> cj;
      for (int b = 0; b < n; ++b)
        if (B.masks[J] >> b & 1) cj.push_back(b);
      Mat<S> sub(k, k);
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) sub(x, y) = M(ri[x], cj[y]);
      C(I, J) = k == 0 ? S(1) : det(sub);
    }
  }
  return C;
}

// Pullback A^* a for the linear map v -> A v.
template <class S> KForm<S> pullback(const Mat<S>& A, const KForm<S>& a) {
  Mat<S> C = compound(A, a.k);  // C(J,I) = det A[J,I]
  KForm<S> r(a.n, a.k);
  for (int I = 0; I < a.size(); ++I)
    for (int J = 0; J < a.size(); ++J) r.c[I] += C(J, I) * a.c[J];
  return r;
}

// Oriented inner-product model space.
template <class S> struct ModelSpace {
  int n = 0;
  Mat<S> g, ginv;
  int orientation = 1;
  S sqrt_det = S(1);
  bool has_volume = true;
  std::vector<Mat<S>> lam;  // lam[k] = k-th compound of g^{-1}

  ModelSpace() = default;
  ModelSpace(Mat<S> metric, int orient = 1) : n(metric.rows), g(std::move(metric)), orientation(orient) {
    if (g.rows != g.cols) throw std::invalid_argument("metric not square");
    if (n != 3 && n != 4 && n != 7) throw std::invalid_argument("model space dimension must be 3, 4 or 7");
    if (orient != 1 && orient != -1) throw std::invalid_argument("orientation must be +-1");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (!Num<S>::is_zero(g(i, j) - g(j, i), 1e-12)) throw std::invalid_argument("metric not symmetric");
    for (int m = 1; m <= n; ++m) {
      Mat<S> lead(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) lead(i, j) = g(i, j);
      if (Num<S>::sign(det(lead)) <= 0) throw std::invalid_argument("metric not positive definite");
    }
    ginv = inverse(g);
    try {
      sqrt_det = Num<S>::sqrt(det(g));
    } catch (const std::domain_error&) {
      has_volume = false;
    }
    for (int k = 0; k <= n; ++k) lam.push_back(compound(ginv, k));
  }

  static ModelSpace euclidean(int n, int orient = 1) { return ModelSpace(Mat<S>::identity(n), orient); }
};

template <class S> KForm<S> vol(const ModelSpace<S>& X) {
  KForm<S> v(X.n, X.n);
  if (!X.has_volume) throw std::domain_error("volume form not exact in this scalar mode");
  v.c[0] = X.orientation > 0 ? X.sqrt_det : S(-X.sqrt_det);
  return v;
}

template <class S> S inner(const ModelSpace<S>& X, const KForm<S>& a, const KForm<S>& b) {
  a.check_same(b);
  if (a.n != X.n) throw std::invalid_argument("inner: space mismatch");
  const Mat<S>& L = X.lam[a.k];
  S s(0);
  for (int I = 0; I < a.size(); ++I) {
    if (Num<S>::is_zero(a.c[I])) continue;
    for (int J = 0; J < b.size(); ++J) s += a.c[I] * L(I, J) * b.c[J];
  }
  return s;
}

template <class S> double norm(const ModelSpace<S>& X, const KForm<S>& a) {
  return std::sqrt(std::max(0.0, Num<S>::to_double(inner(X, a, a))));
}

template <class S> KForm<S> hodge(const ModelSpace<S>& X, const KForm<S>& a) {
  if (a.n != X.n) throw std::invalid_argument("hodge: space mismatch");
  if (!X.has_volume) throw std::domain_error("hodge: sqrt(det g) not exact in this scalar mode");
  const Mat<S>& L = X.lam[a.k];
  const uint8_t full = static_cast<uint8_t>((1u << X.n) - 1);
  KForm<S> r(X.n, X.n - a.k);
  S scale = X.orientation > 0 ? X.sqrt_det : S(-X.sqrt_det);
  for (int I = 0; I < a.size(); ++I) {
    S raised(0);
    for (int J = 0; J < a.size(); ++J)
      if (!Num<S>::is_zero(a.c[J])) raised += L(I, J) * a.c[J];
    if (Num<S>::is_zero(raised)) continue;
    uint8_t m = a.mask(I);
    int s = merge_sign(m, static_cast<uint8_t>(full & ~m));
    S v = scale * raised;
    r.at(static_cast<uint8_t>(full & ~m)) += s > 0 ? v : S(-v);
  }
  return r;
}

// Coefficient on dx^{1..n} of a top-degree form.
template <class S> const S& top(const KForm<S>& a) {
  if (a.k != a.n) throw std::invalid_argument("not a top-degree form");
  return a.c[0];
}

using Point = std::vector<double>;
using FormField = std::function<KForm<double>(const Point&)>;

// d(omega) at p by central differences, order 2 (default) or 4.
KForm<double> fd_exterior_derivative(const FormField& field, const Point& p, double h, int order = 2);

// Partial derivative d/dx_i of a form field by central differences.
KForm<double> fd_partial(const FormField& field, const Point& p, int i, double h, int order = 2);

}  // namespace g2eh
