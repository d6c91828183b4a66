// SPDX-License-Identifier: MIT
//
// HyperKaehler linear algebra on R^4 and the product G2 structures on
// R^3 x R^4.  In seven dimensions x1..x3 are the R^3 factor and x4..x7 are
// the fibre coordinates y1..y4.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "g2eh/g2.hpp"

namespace g2eh {

template <class S> struct QuaternionicFrame {
  Mat<S> h = Mat<S>::identity(4);
  std::array<KForm<S>, 3> omega;
  // Action on 1-forms: column i is the image of dy_{i+1}.
  std::array<Mat<S>, 3> J;

  static QuaternionicFrame standard() {
    using F = KForm<S>;
    QuaternionicFrame f;
    f.omega[0] = F::dx(4, {1, 2}) + F::dx(4, {3, 4});
    f.omega[1] = F::dx(4, {1, 3}) + F::dx(4, {4, 2});
    f.omega[2] = F::dx(4, {1, 4}) + F::dx(4, {2, 3});
    auto set = [](Mat<S>& m, std::array<std::pair<int, int>, 4> img) {
      m = Mat<S>(4, 4);
      for (int i = 0; i < 4; ++i) {
        int target = img[i].first, s = img[i].second;
        m(target - 1, i) = S(s);
      }
    };
    set(f.J[0], {{{2, -1}, {1, 1}, {4, -1}, {3, 1}}});
    set(f.J[1], {{{3, -1}, {4, 1}, {1, 1}, {2, -1}}});
    set(f.J[2], {{{4, -1}, {3, -1}, {2, 1}, {1, 1}}});
    return f;
  }

  // (omega_2, omega_3) and (J_2, J_3) rotated by the angle with cosine c, sine s.
  QuaternionicFrame rotated(const S& c, const S& s) const {
    QuaternionicFrame f = *this;
    f.omega[1] = c * omega[1] + s * omega[2];
    f.omega[2] = S(-s) * omega[1] + c * omega[2];
    for (size_t i = 0; i < f.J[1].a.size(); ++i) {
      f.J[1].a[i] = c * J[1].a[i] + s * J[2].a[i];
      f.J[2].a[i] = -s * J[1].a[i] + c * J[2].a[i];
    }
    return f;
  }

  ModelSpace<S> space() const { return ModelSpace<S>(h, 1); }

  // J_k on forms of any degree, extended as an algebra automorphism.
  KForm<S> apply_J(int k, const KForm<S>& a) const { return pullback(J[k].transpose(), a); }
};

struct FrameReport {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(std::string s) {
    ok = false;
    failures.push_back(std::move(s));
  }
};

// Quaternion relations on vectors and 1-forms, self-duality, compatibility
// omega_k(u,v) = h(J_k u, v), omega_k^2 = 2 vol, and *(a ^ omega_k) = -J_k a.
template <class S> FrameReport check_frame(const QuaternionicFrame<S>& f) {
  FrameReport rep;
  const Mat<S> Id = Mat<S>::identity(4);
  Mat<S> minusId = Id;
  for (auto& x : minusId.a) x = -x;
  const char* nm[3] = {"J1", "J2", "J3"};
  std::array<Mat<S>, 3> V;
  for (int k = 0; k < 3; ++k) V[k] = f.J[k].transpose();
  for (int k = 0; k < 3; ++k) {
    if (!equal(V[k] * V[k], minusId, 1e-12)) rep.fail(std::string(nm[k]) + "^2 != -1");
    int a = (k + 1) % 3, b = (k + 2) % 3;
    if (!equal(V[k] * V[a], V[b], 1e-12)) rep.fail(std::string("vectors: ") + nm[k] + nm[a] + " != " + nm[b]);
    Mat<S> neg = f.J[b];
    for (auto& x : neg.a) x = -x;
    if (!equal(f.J[k] * f.J[a], neg, 1e-12)) rep.fail(std::string("1-forms: ") + nm[k] + nm[a] + " != -" + nm[b]);
  }
  ModelSpace<S> X = f.space();
  KForm<S> v = vol(X);
  for (int k = 0; k < 3; ++k) {
    if (!(hodge(X, f.omega[k]) - f.omega[k]).is_zero(1e-12))
      rep.fail("omega" + std::to_string(k + 1) + " not self-dual");
    // omega(e_i, e_j) against h(J e_i, e_j)
    Mat<S> hJ = V[k].transpose() * f.h;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        // omega(u,v) = v.(u.omega)
        S w = interior(unit_vector<S>(4, j), interior(unit_vector<S>(4, i), f.omega[k])).c[0];
        if (!Num<S>::is_zero(w - hJ(i, j), 1e-12))
          rep.fail("omega" + std::to_string(k + 1) + "(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) +
                   ") != h(J e, e)");
      }
    for (int l = 0; l < 3; ++l) {
      KForm<S> ww = wedge(f.omega[k], f.omega[l]);
      KForm<S> want = k == l ? S(2) * v : KForm<S>(4, 4);
      if (!(ww - want).is_zero(1e-12))
        rep.fail("omega" + std::to_string(k + 1) + "^omega" + std::to_string(l + 1) + " wrong");
    }
    for (int i = 0; i < 4; ++i) {
      KForm<S> a = KForm<S>::dx(4, {i + 1});
      KForm<S> lhs = hodge(X, wedge(a, f.omega[k]));
      KForm<S> rhs = -f.apply_J(k, a);
      if (!(lhs - rhs).is_zero(1e-12))
        rep.fail("*(dy" + std::to_string(i + 1) + "^omega" + std::to_string(k + 1) + ") != -J dy");
    }
  }
  return rep;
}

// Vertical (fibre) and horizontal (R^3) forms placed in R^7.
template <class S> KForm<S> embed_vertical(const KForm<S>& a) {
  if (a.n != 4) throw std::invalid_argument("expected a form on R^4");
  KForm<S> r(7, a.k);
  for (int i = 0; i < a.size(); ++i) r.at(static_cast<uint8_t>(a.mask(i) << 3)) = a.c[i];
  return r;
}
template <class S> KForm<S> embed_horizontal(const KForm<S>& a) {
  if (a.n != 3) throw std::invalid_argument("expected a form on R^3");
  KForm<S> r(7, a.k);
  for (int i = 0; i < a.size(); ++i) r.at(a.mask(i)) = a.c[i];
  return r;
}
// vertical part with horizontal mask hm removed; inverse of (. ^ e_hm) up to sign
template <class S> KForm<S> vertical_slice(const KForm<S>& g, uint8_t hm, int vdeg) {
  KForm<S> r(4, vdeg);
  for (int i = 0; i < g.size(); ++i) {
    uint8_t m = g.mask(i);
    if ((m & 7u) != hm) continue;
    r.at(static_cast<uint8_t>(m >> 3)) = g.c[i];
  }
  return r;
}

// (number of vertical indices, number of horizontal indices) present in g
template <class S> std::vector<std::pair<int, int>> bidegrees(const KForm<S>& g) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < g.size(); ++i) {
    if (Num<S>::is_zero(g.c[i])) continue;
    int h = std::popcount(static_cast<unsigned>(g.mask(i) & 7u));
    std::pair<int, int> t{g.k - h, h};
    bool seen = false;
    for (auto& p : out) seen |= p == t;
    if (!seen) out.push_back(t);
  }
  return out;
}

template <class S> struct ProductG2Point {
  QuaternionicFrame<S> frame;
  S t;
  KForm<S> phi_t, psi_t;
  ModelSpace<S> g_t, X, R3;

  ProductG2Point(QuaternionicFrame<S> f, S t_) : frame(std::move(f)), t(std::move(t_)) {
    X = frame.space();
    R3 = ModelSpace<S>::euclidean(3);
    S t2 = t * t, t4 = t2 * t2;
    phi_t = e(1, 2, 3);
    psi_t = t4 * embed_vertical(vol(X));
    for (int k = 0; k < 3; ++k) {
      int a = (k + 1) % 3 + 1, b = (k + 2) % 3 + 1;
      KForm<S> w = embed_vertical(frame.omega[k]);
      phi_t -= t2 * wedge(w, e(k + 1));
      psi_t -= t2 * wedge(w, e(a, b));
    }
    Mat<S> g(7, 7);
    for (int i = 0; i < 3; ++i) g(i, i) = S(1);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(3 + i, 3 + j) = t2 * frame.h(i, j);
    g_t = ModelSpace<S>(g, 1);
  }

  static KForm<S> e(int i) { return KForm<S>::dx(7, {i}); }
  static KForm<S> e(int i, int j) { return KForm<S>::dx(7, {i, j}); }
  static KForm<S> e(int i, int j, int k) { return KForm<S>::dx(7, {i, j, k}); }

  KForm<S> V(const KForm<S>& a) const { return embed_vertical(a); }
  KForm<S> starX(const KForm<S>& a) const { return hodge(X, a); }
  KForm<S> star_t(const KForm<S>& a) const { return hodge(g_t, a); }
  KForm<S> Jk(int k, const KForm<S>& a) const { return frame.apply_J(k - 1, a); }

  // gamma_{1,2} = z1^e23 + z2^e31 + z3^e12
  KForm<S> make_12(const std::array<KForm<S>, 3>& z) const {
    return wedge(V(z[0]), e(2, 3)) + wedge(V(z[1]), e(3, 1)) + wedge(V(z[2]), e(1, 2));
  }
  std::array<KForm<S>, 3> split_12(const KForm<S>& g) const {
    // dx_{ab}^dy = (dy ^ e_ab) for a 1-form dy, so the slices read off directly
    std::array<KForm<S>, 3> z{vertical_slice(g, 0b110, 1), -vertical_slice(g, 0b101, 1), vertical_slice(g, 0b011, 1)};
    return z;
  }

  // Closed forms of the type-(3,0) and type-(1,2) projections.
  KForm<S> pi7_formula_30(const KForm<S>& eta) const {
    KForm<S> s = starX(eta);
    S c = Num<S>::from_ratio(1, 4) / (t * t);
    KForm<S> r = Num<S>::from_ratio(1, 4) * V(eta);
    r -= c * (wedge(V(Jk(1, s)), e(2, 3)) + wedge(V(Jk(2, s)), e(3, 1)) + wedge(V(Jk(3, s)), e(1, 2)));
    return r;
  }
  KForm<S> pi7_formula_12(const std::array<KForm<S>, 3>& z) const {
    const S q = Num<S>::from_ratio(1, 4);
    KForm<S> r = S(-(t * t) * q) * V(starX(Jk(1, z[0])) + starX(Jk(2, z[1])) + starX(Jk(3, z[2])));
    r += q * wedge(V(z[0] + Jk(3, z[1]) - Jk(2, z[2])), e(2, 3));
    r += q * wedge(V(-Jk(3, z[0]) + z[1] + Jk(1, z[2])), e(3, 1));
    r += q * wedge(V(Jk(2, z[0]) - Jk(1, z[1]) + z[2]), e(1, 2));
    return r;
  }
  KForm<S> dtheta_formula_30(const KForm<S>& eta) const {
    const S h = Num<S>::from_ratio(1, 2);
    KForm<S> r = S(-h / (t * t)) * wedge(V(starX(eta)), e(1, 2, 3));
    for (int k = 1; k <= 3; ++k) r += h * wedge(V(Jk(k, eta)), e(k));
    return r;
  }
  KForm<S> dtheta_formula_12(const std::array<KForm<S>, 3>& z) const {
    const S h = Num<S>::from_ratio(1, 2);
    const S ht2 = h * t * t;
    KForm<S> r = h * wedge(V(Jk(1, z[0]) + Jk(2, z[1]) + Jk(3, z[2])), e(1, 2, 3));
    r += ht2 * wedge(V(starX(-z[0] + Jk(3, z[1]) - Jk(2, z[2]))), e(1));
    r += ht2 * wedge(V(starX(-Jk(3, z[0]) - z[1] + Jk(1, z[2]))), e(2));
    r += ht2 * wedge(V(starX(Jk(2, z[0]) - Jk(1, z[1]) - z[2])), e(3));
    return r;
  }

  // Dispatch on the bidegree of a 7-dimensional 3-form.
  KForm<S> pi7_formula(const KForm<S>& g) const {
    auto kind = classify(g);
    if (kind == 30) return pi7_formula_30(vertical_slice(g, 0, 3));
    if (kind == 12) return pi7_formula_12(split_12(g));
    return KForm<S>(7, 3);
  }
  KForm<S> dtheta_formula(const KForm<S>& g) const {
    auto kind = classify(g);
    if (kind == 30) return dtheta_formula_30(vertical_slice(g, 0, 3));
    if (kind == 12) return dtheta_formula_12(split_12(g));
    return KForm<S>(7, 4);
  }

  // pi7 = -1/4 *(phi ^ *(phi ^ .)), valid for any G2 structure
  KForm<S> pi7_bruteforce(const KForm<S>& g) const {
    return Num<S>::from_ratio(-1, 4) * star_t(wedge(phi_t, star_t(wedge(phi_t, g))));
  }

 private:
  int classify(const KForm<S>& g) const {
    if (g.n != 7 || g.k != 3) throw std::invalid_argument("expected a 3-form on R^7");
    auto bd = bidegrees(g);
    if (bd.empty()) return 0;
    if (bd.size() == 1 && bd[0] == std::make_pair(3, 0)) return 30;
    if (bd.size() == 1 && bd[0] == std::make_pair(1, 2)) return 12;
    throw std::invalid_argument("unsupported bidegree; expected type (3,0) or (1,2)");
  }
};

// Exact matrices of the three maps A, B, C on R^4 with its hyperKaehler triple.
struct AppendixAReport {
  int dim_ker_A = 0, rank_A = 0, rank_B = 0, rank_C = 0;
  bool image_B_equals_ker_A = false;
  bool B_example_matches = false;
};
AppendixAReport appendixA_maps(const QuaternionicFrame<Rational>& f);
Mat<Rational> appendixA_matrix_A(const QuaternionicFrame<Rational>& f);
Mat<Rational> appendixA_matrix_B(const QuaternionicFrame<Rational>& f);
Mat<Rational> appendixA_matrix_C(const QuaternionicFrame<Rational>& f);

// Flat fibre checks by finite differences (float mode).
using Field4 = std::function<KForm<double>(const Point&)>;
struct FibreIdentityResiduals {
  double first = 0;   // max_i |w_i ^ *d a + d*(J_i a) vol|
  double second = 0;  // |*d g - d*(*g)| for the 3-form g = *a
  double third = 0;   // max_k |d*(J_k df)|
};
FibreIdentityResiduals fibre_identities(const QuaternionicFrame<double>& f, const Field4& alpha, const std::function<double(const Point&)>& fn,
                         const Point& p, double h);

// d* = -*d* on a flat fibre
KForm<double> fd_codifferential(const QuaternionicFrame<double>& f, const Field4& a, const Point& p, double h);

// |Delta(f w_k) - (Delta f) w_k| by nested differences on the flat fibre
double flat_weitzenboeck_residual(const QuaternionicFrame<double>& f, const std::function<double(const Point&)>& fn, int k,
                                  const Point& p, double h);

// Synthetic rotating-triple model phi_t(x,y) (see implementation) and the
// residuals of the three fibre relations derived from the fundamental relation.
struct SyntheticRelations {
  std::array<double, 3> residual{};
  std::array<double, 3> scale{};
};
SyntheticRelations synthetic_relations(double t, const Point& x, double h);
FormField synthetic_phi_field(double t);

}  // namespace g2eh
