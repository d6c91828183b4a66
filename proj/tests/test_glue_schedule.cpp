// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "g2eh/glue_schedule.hpp"
#include "oracles.hpp"

using namespace g2eh;
using Q = Rational;

namespace {
Q q(long p, long r) {
  Q x(p, r);
  x.canonicalize();
  return x;
}
}  // namespace

TEST_CASE("affine exponents") {
  Affine x(q(20, 9), q(-1, 9)), y(q(16, 9));
  CHECK(x.str() == "20/9-1/9*gamma");
  CHECK(y.str() == "16/9");
  CHECK((x - y) == Affine(q(4, 9), q(-1, 9)));
  CHECK(x.at(q(1, 100)) == q(1999, 900));
  // infinitesimal gamma: constant part decides
  CHECK(min_exponent(x, y) == y);
  // equal at gamma = 4, x smaller beyond
  CHECK(x.at(Q(4)) == y.at(Q(4)));
  CHECK(min_exponent(x, y, Q(5)) == x);
  CHECK(min_exponent(x, y, Q(3)) == y);
  CHECK(min_exponent(Affine(1, 1), Affine(1, -1)) == Affine(1, -1));
}

TEST_CASE("cutoff") {
  CutoffFn chi;
  CHECK(chi(0.5) == 0.0);
  CHECK(chi(1.0) == 0.0);
  CHECK(chi(2.0) == 1.0);
  CHECK(chi(3.0) == 1.0);
  CHECK(chi.exact(q(3, 2)) == q(1, 2));
  for (int k = 1; k <= 2; ++k) {
    CHECK(chi.derivative(1.0, k) == doctest::Approx(0.0));
    CHECK(chi.derivative(2.0, k) == doctest::Approx(0.0));
  }
  double prev = 0;
  for (double x = 1; x <= 2; x += 0.01) {
    CHECK(chi(x) >= prev - 1e-15);
    prev = chi(x);
    double h = 1e-6;
    if (x > 1 + h && x < 2 - h) CHECK(chi.derivative(x, 1) == doctest::Approx((chi(x + h) - chi(x - h)) / (2 * h)).epsilon(1e-5));
  }
}

TEST_CASE("regions") {
  const double t = 1e-4, R = 0.5;
  RegionSchedule s(t, R);
  CHECK(s.ordered());
  auto b = s.boundaries();
  CHECK(b[1] == doctest::Approx(std::pow(t, -1.0 / 9)));
  CHECK(b[3] == doctest::Approx(std::pow(t, -0.8)));
  CHECK(region_of(t, R, 0.5) == 1);
  CHECK(region_of(t, R, 1.0) == 1);
  CHECK(region_of(t, R, 1.2) == 2);
  CHECK(region_of(t, R, 1.5 * b[1]) == 3);
  CHECK(region_of(t, R, 10.0) == 4);
  CHECK(region_of(t, R, 1.5 * b[3]) == 5);
  CHECK(region_of(t, R, 2.5 * b[3]) == 6);
  CHECK(region_of(t, R, 2 * R / t, true) == 7);
  CHECK(regions().size() == 7);
  CHECK_FALSE(RegionSchedule(0.5, 0.1).ordered());
}

TEST_CASE("power rules against quadrature") {
  std::mt19937 rng(20240607);
  std::uniform_int_distribution<int> num(-30, 30);
  const int ps[2] = {2, 14};
  int done = 0;
  while (done < 5) {
    Q a = q(num(rng), 9), b = q(num(rng), 9);
    int p = ps[done % 2];
    Q eA = q(1, 5), eB = q(-4, 5);
    PowerLawBound bd{"x", Affine(a), Affine(b), 0, 0};
    Q shifted = b + q(4, p);
    // keep clear of the logarithmic case so the subleading endpoint is negligible
    if (abs(shifted) < q(1, 2)) continue;
    ++done;
    NormExponent e = lp_exponent(bd, p, eA, eB);
    REQUIRE_FALSE(e.logarithmic);
    double n1 = oracle::lp_norm(1e-2, a.get_d(), b.get_d(), p, eA.get_d(), eB.get_d());
    double n2 = oracle::lp_norm(1e-3, a.get_d(), b.get_d(), p, eA.get_d(), eB.get_d());
    double slope = std::log(n1 / n2) / std::log(10.0);
    double want = e.exponent.c.get_d();
    CAPTURE(a.get_str());
    CAPTURE(b.get_str());
    CAPTURE(p);
    CHECK(std::fabs(slope - want) <= 0.01 * std::max(1.0, std::fabs(want)));

    Region reg{0, "", false, false, eA, eB};
    NormExponent c = c0_exponent(bd, reg);
    double s1 = oracle::sup_norm(1e-2, a.get_d(), b.get_d(), eA.get_d(), eB.get_d());
    double s2 = oracle::sup_norm(1e-3, a.get_d(), b.get_d(), eA.get_d(), eB.get_d());
    CHECK(std::log(s1 / s2) / std::log(10.0) == doctest::Approx(c.exponent.c.get_d()).epsilon(1e-9).scale(1));
  }
}

TEST_CASE("logarithmic case is flagged") {
  PowerLawBound bd{"x", Affine(1), Affine(-2), 0, 0};
  CHECK(lp_exponent(bd, 2, q(1, 5), q(-4, 5)).logarithmic);
  CHECK_FALSE(lp_exponent(bd, 14, q(1, 5), q(-4, 5)).logarithmic);
  PowerLawBound bg{"x", Affine(1), Affine(-2, 1), 0, 0};
  CHECK(lp_exponent(bg, 2, q(1, 5), q(-4, 5), Q(0)).logarithmic);
  CHECK_FALSE(lp_exponent(bg, 2, q(1, 5), q(-4, 5), q(1, 10)).logarithmic);
  CHECK_THROWS_AS(lp_exponent(bd, 0, q(1, 5), q(-4, 5)), std::invalid_argument);
}

TEST_CASE("table against hand-entered values") {
  TorsionTable T = torsion_table();
  REQUIRE(T.rows.size() == 6);
  auto gold = reference_table();
  REQUIRE(gold.size() == 6);
  for (size_t r = 0; r < 6; ++r)
    for (int c = 0; c < 3; ++c) {
      CHECK(T.rows[r].cells[c].zero == gold[r][c].zero);
      CHECK(T.rows[r].cells[c].exponent == gold[r][c].exponent);
    }
  // independent spot values
  CHECK(T.rows[0].cells[0].exponent == Affine(2));
  CHECK(T.rows[3].cells[0].exponent == Affine(q(20, 9), q(-1, 9)));
  CHECK(T.rows[4].cells[2].exponent == Affine(q(107, 35)));
  CHECK(T.aggregate[0] == Affine(q(16, 9)));
  CHECK(T.aggregate[1] == Affine(q(32, 9)));
  CHECK(T.aggregate[2] == Affine(q(8, 7)));
  CHECK_THROWS_AS(torsion_table(Q(1)), std::invalid_argument);
}

TEST_CASE("alpha window") {
  CHECK(alpha_window(torsion_table()).alpha == q(1, 18));
  CHECK(alpha_window(Q(2), Q(4), Q(2)).alpha == q(1, 2));
  CHECK(alpha_window(Q(2), q(7, 2), Q(2)).empty);
  TorsionTable Tg = torsion_table(q(1, 100));
  CHECK(alpha_window(Tg).alpha == q(1, 18));
}

TEST_CASE("pointwise bounds are continuous across inner boundaries") {
  auto checks = boundary_consistency(0);
  REQUIRE(checks.size() == 4);
  CHECK(checks[0].agree);
  CHECK(checks[1].agree);
  auto bounds = pointwise_bound();
  CHECK(bound_for(bounds, 6, 0).zero);
  CHECK_FALSE(bound_for(bounds, 2, 1).zero);
}
