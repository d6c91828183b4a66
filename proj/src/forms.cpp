// SPDX-License-Identifier: MIT
#include "g2eh/forms.hpp"

#include <cmath>

namespace g2eh {

namespace {

struct BasisTable {
  Basis b[kMaxDim + 1][kMaxDim + 1];
  BasisTable() {
    for (int n = 0; n <= kMaxDim; ++n)
      for (int k = 0; k <= n; ++k) {
        Basis& B = b[n][k];
        B.n = n;
        B.k = k;
        B.pos.fill(-1);
        // lexicographic enumeration of increasing k-tuples from {0..n-1}
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
          uint8_t m = 0;
          for (int i : idx) m |= static_cast<uint8_t>(1u << i);
          B.pos[m] = static_cast<int>(B.masks.size());
          B.masks.push_back(m);
          int i = k - 1;
          while (i >= 0 && idx[i] == n - k + i) --i;
          if (i < 0) break;
          ++idx[i];
          for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
      }
  }
};

}  // namespace

const Basis& Basis::get(int n, int k) {
  static const BasisTable table;
  if (n < 0 || n > kMaxDim || k < 0 || k > n) throw std::out_of_range("no basis for this (dim, degree)");
  return table.b[n][k];
}

int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int merge_sign(uint8_t A, uint8_t B) {
  if (A & B) return 0;
  // number of pairs (a in A, b in B) with a > b
  int inv = 0;
  for (int b = 0; b < 8; ++b)
    if (B >> b & 1) inv += std::popcount(static_cast<unsigned>(A >> (b + 1)));
  return inv % 2 ? -1 : 1;
}

std::string mask_label(uint8_t m) {
  std::string s;
  for (int b = 0; b < 8; ++b)
    if (m >> b & 1) s += static_cast<char>('1' + b);
  return s;
}

KForm<double> fd_partial(const FormField& field, const Point& p, int i, double h, int order) {
  auto shifted = [&](double s) {
    Point q = p;
    q[i] += s;
    KForm<double> f = field(q);
    for (double x : f.c)
      if (!std::isfinite(x)) throw std::domain_error("non-finite field value");
    return f;
  };
  if (order == 2) return (shifted(h) - shifted(-h)) * (1.0 / (2 * h));
  if (order == 4)
    return (shifted(-2 * h) - 8.0 * shifted(-h) + 8.0 * shifted(h) - shifted(2 * h)) * (1.0 / (12 * h));
  throw std::invalid_argument("finite-difference order must be 2 or 4");
}

KForm<double> fd_exterior_derivative(const FormField& field, const Point& p, double h, int order) {
  const int n = static_cast<int>(p.size());
  KForm<double> d;
  for (int i = 0; i < n; ++i) {
    KForm<double> term = wedge(KForm<double>::dx(n, {i + 1}), fd_partial(field, p, i, h, order));
    if (i == 0)
      d = term;
    else
      d += term;
  }
  return d;
}

}  // namespace g2eh
