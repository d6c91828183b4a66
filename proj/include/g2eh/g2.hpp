// SPDX-License-Identifier: MIT
//
// Pointwise G2 structures on R^7.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "g2eh/forms.hpp"

namespace g2eh {

// phi0 = dx123 - dx145 - dx167 - dx246 + dx257 - dx347 - dx356
template <class S> KForm<S> phi0() {
  using F = KForm<S>;
  return F::dx(7, {1, 2, 3}) - F::dx(7, {1, 4, 5}) - F::dx(7, {1, 6, 7}) - F::dx(7, {2, 4, 6}) +
         F::dx(7, {2, 5, 7}) - F::dx(7, {3, 4, 7}) - F::dx(7, {3, 5, 6});
}

template <class S> KForm<S> psi0() {
  using F = KForm<S>;
  return F::dx(7, {4, 5, 6, 7}) - F::dx(7, {2, 3, 6, 7}) - F::dx(7, {2, 3, 4, 5}) - F::dx(7, {1, 3, 5, 7}) +
         F::dx(7, {1, 3, 4, 6}) - F::dx(7, {1, 2, 5, 6}) - F::dx(7, {1, 2, 4, 7});
}

// B(u,v) = (1/6) (u.phi)^(v.phi)^phi as a coefficient of dx1..7
template <class S> Mat<S> phi_bilinear(const KForm<S>& phi) {
  if (phi.n != 7 || phi.k != 3) throw std::invalid_argument("expected a 3-form on R^7");
  std::vector<KForm<S>> c;
  for (int i = 0; i < 7; ++i) c.push_back(interior(unit_vector<S>(7, i), phi));
  Mat<S> B(7, 7);
  const S sixth = Num<S>::from_ratio(1, 6);
  for (int i = 0; i < 7; ++i) {
    KForm<S> ci_phi = wedge(c[i], phi);
    for (int j = i; j < 7; ++j) {
      B(i, j) = sixth * top(wedge(c[j], ci_phi));
      B(j, i) = B(i, j);
    }
  }
  return B;
}

namespace detail {
template <class S> bool positive_definite(const Mat<S>& g) {
  for (int m = 1; m <= g.rows; ++m) {
    Mat<S> lead(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) lead(i, j) = g(i, j);
    if (Num<S>::sign(det(lead)) <= 0) return false;
  }
  return true;
}

inline double min_eigenvalue(const Mat<double>& g) {
  Eigen::MatrixXd M(g.rows, g.cols);
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) M(i, j) = g(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Sign-normalised B / |det B|^{1/9}; empty if B is degenerate or if an
// exact root does not exist.
template <class S> std::optional<std::pair<Mat<S>, int>> normalised_metric(const KForm<S>& phi) {
  Mat<S> B = phi_bilinear(phi);
  S d = det(B);
  int s = Num<S>::sign(d);
  if (s == 0) return std::nullopt;
  S root = Num<S>::root(d, 9);  // sign(root) == sign(det B)
  Mat<S> g = B;
  for (auto& x : g.a) x /= root;
  return std::make_pair(g, s);
}
}  // namespace detail

template <class S> bool is_positive(const KForm<S>& phi) {
  if (phi.n != 7 || phi.k != 3) return false;
  auto gm = detail::normalised_metric(phi);
  if (!gm) return false;
  if constexpr (Num<S>::exact)
    return detail::positive_definite(gm->first);
  else
    return detail::min_eigenvalue(gm->first) > 1e-9;
}

// (g_phi, orientation).  Exact mode throws if det(B)^{1/9} is irrational.
template <class S> std::pair<Mat<S>, int> metric_from_phi(const KForm<S>& phi) {
  auto gm = detail::normalised_metric(phi);
  if (!gm) throw std::domain_error("3-form is not positive");
  bool ok;
  if constexpr (Num<S>::exact)
    ok = detail::positive_definite(gm->first);
  else
    ok = detail::min_eigenvalue(gm->first) > 1e-9;
  if (!ok) throw std::domain_error("3-form is not positive");
  return *gm;
}

template <class S> ModelSpace<S> space_of(const KForm<S>& phi) {
  auto [g, o] = metric_from_phi(phi);
  return ModelSpace<S>(g, o);
}

template <class S> KForm<S> theta(const KForm<S>& phi) { return hodge(space_of(phi), phi); }

template <class S> struct Component {
  int label;
  KForm<S> form;
};

template <class S> class G2Structure {
 public:
  KForm<S> phi, psi, volume;
  ModelSpace<S> space;

  explicit G2Structure(KForm<S> phi_) : phi(std::move(phi_)), space(space_of(phi)) {
    psi = hodge(space, phi);
    volume = vol(space);
    build_projectors();
  }

  // Projection matrix acting on coefficient vectors; degree 2 (labels 7, 14)
  // or degree 3 (labels 1, 7, 27).
  const Mat<S>& projector(int degree, int label) const {
    if (degree == 2) {
      if (label == 7) return p2_7_;
      if (label == 14) return p2_14_;
    } else if (degree == 3) {
      if (label == 1) return p3_1_;
      if (label == 7) return p3_7_;
      if (label == 27) return p3_27_;
    }
    throw std::invalid_argument("unsupported type component");
  }

  std::vector<int> labels(int degree) const {
    if (degree == 2 || degree == 5) return {7, 14};
    if (degree == 3 || degree == 4) return {1, 7, 27};
    throw std::invalid_argument("type decomposition only for degrees 2..5");
  }

  KForm<S> component(const KForm<S>& xi, int label) const {
    if (xi.n != 7) throw std::invalid_argument("space mismatch");
    if (xi.k == 2 || xi.k == 3) return apply(projector(xi.k, label), xi);
    if (xi.k == 4 || xi.k == 5) {
      // ** = 1 in dimension 7
      return hodge(space, apply(projector(7 - xi.k, label), hodge(space, xi)));
    }
    throw std::invalid_argument("type decomposition only for degrees 2..5");
  }

  std::vector<Component<S>> project(const KForm<S>& xi) const {
    std::vector<Component<S>> out;
    for (int l : labels(xi.k)) out.push_back({l, component(xi, l)});
    return out;
  }

  // D_phi Theta (xi) = *(4/3 pi1 + pi7 - pi27) xi
  KForm<S> linearize_theta(const KForm<S>& xi) const {
    if (xi.k != 3 || xi.n != 7) throw std::invalid_argument("linearize_theta expects a 3-form on R^7");
    KForm<S> v = Num<S>::from_ratio(4, 3) * component(xi, 1) + component(xi, 7) - component(xi, 27);
    return hodge(space, v);
  }

 private:
  Mat<S> p2_7_, p2_14_, p3_1_, p3_7_, p3_27_;

  static KForm<S> apply(const Mat<S>& P, const KForm<S>& xi) {
    KForm<S> r(xi.n, xi.k);
    r.c = P * xi.c;
    return r;
  }

  // orthogonal projector onto span(V) for the Gram matrix M
  static Mat<S> orth_projector(const Mat<S>& V, const Mat<S>& M) {
    Mat<S> VtM = V.transpose() * M;
    return V * (inverse(VtM * V) * VtM);
  }

  static Mat<S> columns(const std::vector<KForm<S>>& fs) {
    Mat<S> V(fs[0].size(), static_cast<int>(fs.size()));
    for (size_t j = 0; j < fs.size(); ++j)
      for (int i = 0; i < fs[j].size(); ++i) V(i, static_cast<int>(j)) = fs[j].c[i];
    return V;
  }

  void build_projectors() {
    std::vector<KForm<S>> v2, v3;
    for (int i = 0; i < 7; ++i) {
      v2.push_back(interior(unit_vector<S>(7, i), phi));
      v3.push_back(interior(unit_vector<S>(7, i), psi));
    }
    p2_7_ = orth_projector(columns(v2), space.lam[2]);
    p2_14_ = Mat<S>::identity(21) - p2_7_;
    p3_1_ = orth_projector(columns({phi}), space.lam[3]);
    p3_7_ = orth_projector(columns(v3), space.lam[3]);
    p3_27_ = Mat<S>::identity(35) - p3_1_ - p3_7_;
  }
};

// |xi|_{g_phi} above which remainder_F refuses to evaluate
constexpr double kRemainderThreshold = 0.1;

// F(xi) = Theta(phi+xi) - Theta(phi) - D Theta(xi)
template <class S> KForm<S> remainder_F(const G2Structure<S>& G, const KForm<S>& xi) {
  if (norm(G.space, xi) > kRemainderThreshold) throw std::domain_error("|xi| above the operational threshold");
  KForm<S> p = G.phi + xi;
  if (!is_positive(p)) throw std::domain_error("phi + xi is not positive");
  return theta(p) - G.psi - G.linearize_theta(xi);
}

// Both sides of phi ^ *d(phi) = psi ^ *d(psi) at p, derivatives by central
// differences of the given order.
struct FundamentalTerms {
  KForm<double> lhs, rhs;
  double residual;  // |lhs - rhs| in g_phi(p)
};

FundamentalTerms fundamental_relation_terms(const FormField& phi_field, const Point& p, double h, int order = 2);

inline double fundamental_relation_residual(const FormField& phi_field, const Point& p, double h, int order = 2) {
  return fundamental_relation_terms(phi_field, p, h, order).residual;
}

}  // namespace g2eh
