// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "g2eh/g2.hpp"
#include "oracles.hpp"

using namespace g2eh;
using Q = Rational;

TEST_CASE("model structure") {
  CHECK(theta(phi0<Q>()) == psi0<Q>());
  CHECK(oracle::flat_hodge(phi0<Q>()) == psi0<Q>());
  auto [g, o] = metric_from_phi(phi0<Q>());
  CHECK(equal(g, Mat<Q>::identity(7)));
  CHECK(o == 1);
  CHECK(top(wedge(phi0<Q>(), psi0<Q>())) == 7);
}

TEST_CASE("metric of a pulled-back form is A^T A") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 4; ++trial) {
    Mat<Q> A = oracle::rational_near_identity(rng, 7);
    KForm<Q> phi = pullback(A, phi0<Q>());
    REQUIRE(is_positive(phi));
    auto [g, o] = metric_from_phi(phi);
    CHECK(equal(g, A.transpose() * A));
    CHECK(o == 1);
    CHECK(theta(phi) == pullback(A, psi0<Q>()));
  }
}

TEST_CASE("orientation-reversing pullback and degenerate forms") {
  Mat<Q> R = Mat<Q>::identity(7);
  R(0, 0) = -1;
  auto [g, o] = metric_from_phi(pullback(R, phi0<Q>()));
  CHECK(o == -1);
  CHECK(equal(g, Mat<Q>::identity(7)));
  CHECK_FALSE(is_positive(KForm<Q>::dx(7, {1, 2, 3})));
  CHECK_FALSE(is_positive(-phi0<double>() + phi0<double>()));
  CHECK_THROWS_AS(metric_from_phi(KForm<Q>::dx(7, {1, 2, 3})), std::domain_error);
}

TEST_CASE("exact mode refuses irrational ninth roots") {
  // phi -> s phi scales the metric by s^(2/3)
  auto [g, o] = metric_from_phi(Q(8) * phi0<Q>());
  Mat<Q> four = Mat<Q>::identity(7);
  for (auto& x : four.a) x *= 4;
  CHECK(equal(g, four));
  CHECK_THROWS_AS(metric_from_phi(Q(2) * phi0<Q>()), std::domain_error);
  CHECK(is_positive(2.0 * phi0<double>()));
  auto [gd, od] = metric_from_phi(2.0 * phi0<double>());
  CHECK(gd(0, 0) == doctest::Approx(std::cbrt(4.0)));
}

TEST_CASE("type projectors") {
  G2Structure<Q> G(phi0<Q>());
  for (int deg : {2, 3}) {
    Mat<Q> sum(oracle::choose(7, deg), oracle::choose(7, deg));
    for (int l : G.labels(deg)) {
      const Mat<Q>& P = G.projector(deg, l);
      CHECK(equal(P * P, P));
      CHECK(rank(P) == l);
      sum = sum + P;
    }
    CHECK(equal(sum, Mat<Q>::identity(sum.rows)));
  }
  CHECK(G.component(phi0<Q>(), 1) == phi0<Q>());
  CHECK(G.component(psi0<Q>(), 1) == psi0<Q>());
  CHECK_THROWS_AS(G.projector(3, 14), std::invalid_argument);
}

TEST_CASE("Lambda^2_7 is the image of v -> v.phi and Lambda^2_14 is killed by ^psi") {
  G2Structure<Q> G(phi0<Q>());
  for (int i = 0; i < 7; ++i) {
    KForm<Q> w = interior(unit_vector<Q>(7, i), G.phi);
    CHECK(G.component(w, 7) == w);
    // on Lambda^2_7, *(phi ^ w) = 2 w
    CHECK(hodge(G.space, wedge(G.phi, w)) == Q(2) * w);
  }
  for (int j = 0; j < 21; ++j) {
    KForm<Q> e(7, 2);
    e.c[j] = 1;
    CHECK(wedge(G.component(e, 14), G.psi).is_zero());
  }
}

TEST_CASE("linearisation against the finite-difference Jacobian") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 4; ++trial) {
    KForm<double> phi = trial == 0 ? phi0<double>() : pullback(oracle::near_identity(rng, 7, 0.2), phi0<double>());
    G2Structure<double> G(phi);
    Mat<double> J(35, 35);
    for (int j = 0; j < 35; ++j) {
      KForm<double> e(7, 3);
      e.c[j] = 1;
      KForm<double> col = G.linearize_theta(e);
      for (int i = 0; i < 35; ++i) J(i, j) = col.c[i];
    }
    CHECK(oracle::relative_frobenius(oracle::theta_jacobian(phi, 1e-5), J) < 1e-8);
  }
}

TEST_CASE("linearisation on each type component at phi0") {
  G2Structure<Q> G(phi0<Q>());
  CHECK(G.linearize_theta(phi0<Q>()) == Q(4, 3) * psi0<Q>());
  KForm<Q> v = interior(unit_vector<Q>(7, 2), psi0<Q>());
  CHECK(G.linearize_theta(v) == hodge(G.space, v));
}

TEST_CASE("remainder is quadratic and guarded") {
  G2Structure<double> G(phi0<double>());
  KForm<double> dir(7, 3);
  for (int i = 0; i < 35; ++i) dir.c[i] = std::cos(1.0 + i);
  dir = (1.0 / norm(G.space, dir)) * dir;
  double f1 = norm(G.space, remainder_F(G, 1e-2 * dir)), f2 = norm(G.space, remainder_F(G, 1e-3 * dir));
  CHECK(std::log10(f1 / f2) == doctest::Approx(2.0).epsilon(0.02));
  CHECK_THROWS_AS(remainder_F(G, 0.5 * dir), std::domain_error);
}

TEST_CASE("fundamental relation holds for a closed constant structure") {
  FormField f = [](const Point&) { return phi0<double>(); };
  CHECK(fundamental_relation_residual(f, Point(7, 0.1), 1e-2) < 1e-12);
}
