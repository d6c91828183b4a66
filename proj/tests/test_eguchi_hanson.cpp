// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "g2eh/eguchi_hanson.hpp"
#include "oracles.hpp"

using namespace g2eh;

TEST_CASE("Ricci by finite differences on the round four-sphere") {
  MetricField g = [](const Point& x) { return oracle::sphere4_metric(x); };
  for (Point p : {Point{0.1, 0.2, -0.3, 0.4}, Point{0.8, -0.5, 0.2, 0.1}}) {
    Mat<double> R = ricci_fd(g, p, 1e-2), G = g(p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(R(i, j) == doctest::Approx(3 * G(i, j)).epsilon(1e-6).scale(1));
  }
  MetricField flat = [](const Point&) { return Mat<double>::identity(4); };
  CHECK(max_abs(ricci_fd(flat, Point{1, 2, 3, 4}, 1e-2)) < 1e-12);
}

TEST_CASE("potential") {
  for (double a : {0.5, 1.0, 3.0})
    for (double r : {1e-2, 0.3, 1.0, 7.0, 50.0}) {
      CHECK(potential_form1(a, r) == doctest::Approx(potential_form2(a, r)).epsilon(1e-12));
      RadialProfile P(a);
      double h = 1e-5 * r;
      CHECK(P.f(r, 1) == doctest::Approx((P.f(r + h) - P.f(r - h)) / (2 * h)).epsilon(1e-6));
      CHECK(P.G(r) == doctest::Approx(P.f(r) - r * r).epsilon(1e-8).scale(1e-8 * r * r));
    }
  // a -> 0 recovers the flat potential r^2
  CHECK(potential_form1(1e-9, 2.0) == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("metric is symmetric, positive and flat at a = 0 limit") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int s = 0; s < 5; ++s) {
    Point y(4);
    for (auto& v : y) v = U(rng);
    Mat<double> h = metric_h(EHParams(1.0), y);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(h(i, j) == doctest::Approx(h(j, i)));
    for (int m = 1; m <= 4; ++m) {
      Mat<double> lead(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) lead(i, j) = h(i, j);
      CHECK(det(lead) > 0);
    }
    Mat<double> h0 = metric_h(EHParams(1e-8), y);
    CHECK(max_abs(h0 - Mat<double>::identity(4)) < 1e-6);
  }
}

TEST_CASE("Kaehler form is closed and Ricci vanishes") {
  EHParams p(1.0);
  FormField w = [&](const Point& y) { return omegaI(p, y); };
  Point y{0.6, -0.9, 0.4, 0.8};
  CHECK(fd_exterior_derivative(w, y, 1e-3, 4).flat_norm() < 1e-8);
  MetricField g = [&](const Point& q) { return metric_h(p, q); };
  double r1 = max_abs(ricci_fd(g, y, radius(y) / 200));
  CHECK(r1 < 1e-4);
  auto X = ModelSpace<double>(metric_h(p, y));
  KForm<double> wI = omegaI(p, y);
  // hyperKaehler triple: pairwise orthogonal, equal volume
  CHECK(top(wedge(wI, wI)) == doctest::Approx(top(wedge(omegaJ(), omegaJ()))));
  CHECK(std::fabs(top(wedge(wI, omegaJ()))) < 1e-12);
  CHECK(std::fabs(top(wedge(wI, omegaK()))) < 1e-12);
  CHECK(top(wedge(wI, wI)) == doctest::Approx(2 * top(vol(X))));
}

TEST_CASE("bolt area") {
  for (double a : {1.0, 2.5, 0.3}) {
    BoltArea b = bolt_area(EHParams(a));
    CHECK(b.area == doctest::Approx(M_PI * a).epsilon(1e-6));
  }
  BoltArea scaled = bolt_area(EHParams(1.0, 0.5));
  CHECK(scaled.area == doctest::Approx(M_PI * 0.25).epsilon(1e-6));
}

TEST_CASE("asymptotically locally Euclidean decay") {
  DecayFit f = ale_decay(1.0, 5, 50, 10);
  CHECK(f.slope == doctest::Approx(-4.0).epsilon(0.025));
  CHECK(loglog_slope({1, 10, 100}, {1, 1e-3, 1e-6}) == doctest::Approx(-3.0));
}

TEST_CASE("product structure") {
  for (double t : {1.0, 0.1}) {
    EHParams p(1.5, t);
    Point x{0.2, -0.1, 0.4, 0.5, 0.3, -0.8, 0.6};
    ProductStructure ps = product_structure(p, x);
    CHECK((theta(ps.phi) - ps.psi).flat_norm() < 1e-9);
    auto [g, o] = metric_from_phi(ps.phi);
    CHECK(max_abs(g - ps.g) < 1e-9);
    CHECK(o == 1);
  }
  FormField pf = product_phi_field(EHParams(1.0));
  Point x{0.1, 0.2, -0.3, 0.3, -0.7, 0.5, 0.2};
  CHECK(fd_exterior_derivative(pf, x, 1e-3, 4).flat_norm() < 1e-7);
  FormField qf = product_psi_field(EHParams(1.0));
  CHECK(fd_exterior_derivative(qf, x, 1e-3, 4).flat_norm() < 1e-7);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS(EHParams(-1.0));
  CHECK_THROWS(EHParams(1.0, 0.0));
}
