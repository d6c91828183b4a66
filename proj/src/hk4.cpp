// SPDX-License-Identifier: MIT
#include "g2eh/hk4.hpp"

#include <cmath>

namespace g2eh {

namespace {

using Q = Rational;
using F4 = KForm<Q>;

// Lambda^2 R^3 basis e12, e13, e23; returns (index, sign) of e_k ^ e_j.
std::pair<int, int> pair_index(int k, int j) {
  if (k == j) return {-1, 0};
  int a = std::min(k, j), b = std::max(k, j);
  int idx = (a == 0 && b == 1) ? 0 : (a == 0 && b == 2) ? 1 : 2;
  return {idx, k < j ? 1 : -1};
}

}  // namespace

Mat<Rational> appendixA_matrix_A(const QuaternionicFrame<Rational>&) {
  // V* (x) L3 V* -> L4 V*, column index 4p + m
  Mat<Q> A(1, 16);
  const Basis& b3 = Basis::get(4, 3);
  for (int p = 0; p < 4; ++p)
    for (int m = 0; m < 4; ++m) {
      F4 eta(4, 3);
      eta.at(b3.masks[m]) = 1;
      A(0, 4 * p + m) = top(wedge(F4::dx(4, {p + 1}), eta));
    }
  return A;
}

Mat<Rational> appendixA_matrix_B(const QuaternionicFrame<Rational>& f) {
  // S2 V* (x) R3 -> V* (x) L3 V*; columns run over k and p <= q with h_pq = h_qp = 1
  Mat<Q> B(16, 30);
  int col = 0;
  for (int k = 0; k < 3; ++k)
    for (int p = 0; p < 4; ++p)
      for (int q = p; q < 4; ++q, ++col) {
        auto add = [&](int a, int b) {  // f^a (x) (f^b ^ w_k) + f^b (x) (f^a ^ w_k)
          F4 u = wedge(F4::dx(4, {b + 1}), f.omega[k]);
          F4 v = wedge(F4::dx(4, {a + 1}), f.omega[k]);
          for (int m = 0; m < 4; ++m) {
            B(4 * a + m, col) += u.c[m];
            B(4 * b + m, col) += v.c[m];
          }
        };
        add(p, q);
        if (p != q) add(q, p);
      }
  return B;
}

Mat<Rational> appendixA_matrix_C(const QuaternionicFrame<Rational>& f) {
  // V (x) V* (x) R3 -> V* (x) V* (x) L2 R3; index (p, q, k) -> 12p + 3q + k,
  // codomain (r, q, pair) -> 12r + 3q + pair
  Mat<Q> C(48, 48);
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) {
          auto [pi, s] = pair_index(k, j);
          if (s == 0) continue;
          F4 c = interior(unit_vector<Q>(4, p), f.omega[j]);
          for (int r = 0; r < 4; ++r) C(12 * r + 3 * q + pi, 12 * p + 3 * q + k) += Q(s) * c.c[r];
        }
  return C;
}

AppendixAReport appendixA_maps(const QuaternionicFrame<Rational>& f) {
  AppendixAReport rep;
  Mat<Q> A = appendixA_matrix_A(f), B = appendixA_matrix_B(f), C = appendixA_matrix_C(f);
  rep.rank_A = rank(A);
  Mat<Q> K = kernel(A);
  rep.dim_ker_A = K.cols;
  rep.rank_B = rank(B);
  rep.image_B_equals_ker_A = same_span(B, K);
  rep.rank_C = rank(C);

  // h^1_11 = 1/2 alone: B gives f^1 (x) *(J_1 f^1)
  std::vector<Q> h(30, Q(0));
  h[0] = Q(1, 2);
  std::vector<Q> out = B * h;
  F4 want = hodge(f.space(), f.apply_J(0, F4::dx(4, {1})));
  bool ok = true;
  for (int p = 0; p < 4; ++p)
    for (int m = 0; m < 4; ++m) ok &= out[4 * p + m] == (p == 0 ? want.c[m] : Q(0));
  rep.B_example_matches = ok;
  return rep;
}

KForm<double> fd_codifferential(const QuaternionicFrame<double>& f, const Field4& a, const Point& p, double h) {
  ModelSpace<double> X = f.space();
  FormField s = [&](const Point& q) { return hodge(X, a(q)); };
  return -hodge(X, fd_exterior_derivative(s, p, h));
}

FibreIdentityResiduals fibre_identities(const QuaternionicFrame<double>& f, const Field4& alpha,
                         const std::function<double(const Point&)>& fn, const Point& p, double h) {
  FibreIdentityResiduals r;
  ModelSpace<double> X = f.space();
  KForm<double> v = vol(X);
  KForm<double> da = fd_exterior_derivative(alpha, p, h);
  for (int i = 0; i < 3; ++i) {
    Field4 Ja = [&, i](const Point& q) { return f.apply_J(i, alpha(q)); };
    KForm<double> lhs = wedge(f.omega[i], hodge(X, da));
    KForm<double> rhs = -(fd_codifferential(f, Ja, p, h).c[0] * v);
    r.first = std::max(r.first, (lhs - rhs).flat_norm());
  }
  Field4 gamma = [&](const Point& q) { return hodge(X, alpha(q)); };
  Field4 star_gamma = [&](const Point& q) { return hodge(X, gamma(q)); };
  KForm<double> l2 = hodge(X, fd_exterior_derivative(gamma, p, h));
  KForm<double> r2 = fd_codifferential(f, star_gamma, p, h);
  r.second = (l2 - r2).flat_norm();
  Field4 df = [&](const Point& q) {
    KForm<double> g(4, 1);
    for (int i = 0; i < 4; ++i) {
      Point a = q, b = q;
      a[i] += h;
      b[i] -= h;
      g.c[i] = (fn(a) - fn(b)) / (2 * h);
    }
    return g;
  };
  for (int k = 0; k < 3; ++k) {
    Field4 Jdf = [&, k](const Point& q) { return f.apply_J(k, df(q)); };
    r.third = std::max(r.third, std::fabs(fd_codifferential(f, Jdf, p, h).c[0]));
  }
  return r;
}

double flat_weitzenboeck_residual(const QuaternionicFrame<double>& f, const std::function<double(const Point&)>& fn, int k,
                                  const Point& p, double h) {
  Field4 eta = [&](const Point& q) { return fn(q) * f.omega[k]; };
  Field4 d_eta = [&](const Point& q) { return fd_exterior_derivative(eta, q, h); };
  Field4 dstar_eta = [&](const Point& q) { return fd_codifferential(f, eta, q, h); };
  KForm<double> lap = fd_codifferential(f, d_eta, p, h) + fd_exterior_derivative(dstar_eta, p, h);
  Field4 scalar = [&](const Point& q) { return KForm<double>::scalar(4, fn(q)); };
  Field4 df = [&](const Point& q) { return fd_exterior_derivative(scalar, q, h); };
  double lap_f = fd_codifferential(f, df, p, h).c[0];
  return (lap - lap_f * f.omega[k]).flat_norm();
}

namespace {

using M3 = std::array<std::array<double, 3>, 3>;

// Rotation exp([w]x) for the axis field w(x) below.
M3 rotation(const Point& x) {
  double w[3] = {0.3 + 0.5 * x[0] + 0.2 * x[1] * x[2], -0.4 + 0.7 * x[1] - 0.3 * x[0] * x[0],
                 0.25 + 0.6 * x[2] + 0.1 * x[0] * x[1]};
  double th = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
  double K[3][3] = {{0, -w[2], w[1]}, {w[2], 0, -w[0]}, {-w[1], w[0], 0}};
  M3 R{};
  double s = std::sin(th) / th, c = (1 - std::cos(th)) / (th * th);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double K2 = 0;
      for (int m = 0; m < 3; ++m) K2 += K[i][m] * K[m][j];
      R[i][j] = (i == j) + s * K[i][j] + c * K2;
    }
  return R;
}

M3 d_rotation(const Point& x, int m, double h) {
  Point a = x, b = x, a2 = x, b2 = x;
  a[m] += h;
  b[m] -= h;
  a2[m] += 2 * h;
  b2[m] -= 2 * h;
  M3 Ra = rotation(a), Rb = rotation(b), Ra2 = rotation(a2), Rb2 = rotation(b2), D{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) D[i][j] = (Rb2[i][j] - 8 * Rb[i][j] + 8 * Ra[i][j] - Ra2[i][j]) / (12 * h);
  return D;
}

QuaternionicFrame<double> rotated_frame(const M3& R) {
  auto f0 = QuaternionicFrame<double>::standard();
  QuaternionicFrame<double> f = f0;
  for (int i = 0; i < 3; ++i) {
    f.omega[i] = KForm<double>(4, 2);
    f.J[i] = Mat<double>(4, 4);
    for (int l = 0; l < 3; ++l) {
      f.omega[i] += R[i][l] * f0.omega[l];
      for (size_t e = 0; e < f.J[i].a.size(); ++e) f.J[i].a[e] += R[i][l] * f0.J[l].a[e];
    }
  }
  return f;
}

// primitives d(lambda_l) = standard omega_l, linear in y
KForm<double> lambda(int l, const Point& y) {
  using D = KForm<double>;
  if (l == 0) return y[0] * D::dx(4, {2}) + y[2] * D::dx(4, {4});
  if (l == 1) return y[0] * D::dx(4, {3}) + y[3] * D::dx(4, {2});
  return y[0] * D::dx(4, {4}) + y[1] * D::dx(4, {3});
}

}  // namespace

FormField synthetic_phi_field(double t) {
  return [t](const Point& p) {
    Point x{p[0], p[1], p[2]};
    QuaternionicFrame<double> f = rotated_frame(rotation(x));
    ProductG2Point<double> P(f, t);
    return P.phi_t;
  };
}

// The rotating triple omega_i(x) = R_il(x) omega_l gives closed
//   phi~ = phi_t + t^2 xi_{1,2},  psi~ = psi_t + t^2 chi ^ e123
// with xi_1 = (d2 R_3l - d3 R_2l) lambda_l (cyclic) and chi = d_i R_il lambda_l.
SyntheticRelations synthetic_relations(double t, const Point& x, double h) {
  (void)t;  // the relations are t-independent
  M3 R = rotation(x);
  M3 dR[3] = {d_rotation(x, 0, h), d_rotation(x, 1, h), d_rotation(x, 2, h)};
  QuaternionicFrame<double> f = rotated_frame(R);
  auto combo = [&](std::array<double, 3> w) {
    return [w](const Point& y) {
      KForm<double> r(4, 1);
      for (int l = 0; l < 3; ++l) r += w[l] * lambda(l, y);
      return r;
    };
  };
  std::array<double, 3> cx{}, cxi[3]{};
  for (int l = 0; l < 3; ++l) {
    for (int i = 0; i < 3; ++i) cx[l] += dR[i][i][l];
    cxi[0][l] = dR[1][2][l] - dR[2][1][l];
    cxi[1][l] = dR[2][0][l] - dR[0][2][l];
    cxi[2][l] = dR[0][1][l] - dR[1][0][l];
  }
  Field4 chi = combo(cx);
  Field4 xi[3] = {combo(cxi[0]), combo(cxi[1]), combo(cxi[2])};
  auto dstarJ = [&](int k, const Field4& a) {
    Field4 Ja = [&, k](const Point& y) { return f.apply_J(k, a(y)); };
    return fd_codifferential(f, Ja, Point{0.1, -0.2, 0.3, 0.05}, 1e-3).c[0];
  };
  SyntheticRelations out;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    double a = dstarJ(i, chi), b = dstarJ(j, xi[k]), c = dstarJ(k, xi[j]);
    out.residual[i] = std::fabs(a - (b - c));
    out.scale[i] = std::fabs(a) + std::fabs(b) + std::fabs(c);
  }
  return out;
}

}  // namespace g2eh
