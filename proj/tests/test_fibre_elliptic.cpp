// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2eh/fibre_elliptic.hpp"
#include "oracles.hpp"

using namespace g2eh;

namespace {
double bump(double r) { return (r <= 1 || r >= 2) ? 0.0 : std::pow(std::sin(M_PI * (r - 1)), 4); }
}  // namespace

TEST_CASE("grid") {
  RadialGrid g = RadialGrid::log_spaced(1e-2, 1e3, 101);
  CHECK(g.size() == 101);
  CHECK(g.r.front() == doctest::Approx(1e-2));
  CHECK(g.r.back() == doctest::Approx(1e3));
  CHECK(g.r[1] / g.r[0] == doctest::Approx(g.r[100] / g.r[99]));
  CHECK(g.face(0) == doctest::Approx(std::sqrt(g.r[0] * g.r[1])));
}

TEST_CASE("discrete operator is symmetric and the tridiagonal solve inverts it") {
  RadialGrid g = RadialGrid::log_spaced(1e-2, 1e2, 200);
  RadialOperator L = RadialOperator::eguchi_hanson(1.0, g);
  std::vector<double> u(g.size()), v(g.size());
  for (int i = 0; i < g.size(); ++i) {
    u[i] = std::exp(-g.r[i]) * std::cos(g.r[i]);
    v[i] = 1 / (1 + g.r[i] * g.r[i]);
  }
  double uv = L.inner(L.apply(u), v), vu = L.inner(u, L.apply(v));
  CHECK(uv == doctest::Approx(vu).epsilon(1e-10));
  std::vector<double> x = L.solve_A(L.apply_A(u));
  double umax = 0, err = 0;
  for (int i = 0; i < g.size(); ++i) {
    umax = std::max(umax, std::fabs(u[i]));
    err = std::max(err, std::fabs(x[i] - u[i]));
  }
  CHECK(err < 1e-10 * umax);
}

TEST_CASE("coefficients approach the flat cone") {
  CHECK(eh_kappa(1.0, 1e3) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(eh_rho(1.0, 1e3) / 1e9 == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("zero source") {
  RadialSolution s = solve_poisson(1.0, [](double) { return 0.0; });
  for (double v : s.u) CHECK(std::fabs(v) < 1e-10);
}

TEST_CASE("flat limit against closed form and quadrature") {
  PoissonOptions opt;
  opt.check_source = false;
  RadialSolution s = solve_poisson(1e-6, [](double r) { return std::exp(-r * r); }, opt);
  double worst = 0;
  for (size_t i = 0; i < s.r.size() && s.r[i] <= 100; ++i)
    worst = std::max(worst, std::fabs(s.u[i] / oracle::flat_gaussian_solution(s.r[i]) - 1));
  CHECK(worst < 1e-3);

  RadialSolution b = solve_poisson(1e-6, bump);
  for (size_t i = 0; i < b.r.size(); i += 97) {
    if (b.r[i] > 100) break;
    double o = oracle::flat_radial_solution(bump, b.r[i], 2.0);
    CHECK(b.u[i] == doctest::Approx(o).epsilon(1e-3));
  }
}

TEST_CASE("far field of a compact source decays like r^-2") {
  RadialSolution s = solve_poisson(1.0, bump);
  CHECK(s.far_slope == doctest::Approx(-2.0).epsilon(0.05));
  CHECK(s.decaying);
  CHECK(s.residual < 1e-8);
}

TEST_CASE("indicial roots") {
  for (double a : {0.5, 1.0, 2.0}) {
    RateReport r = verify_rates(a);
    CHECK(r.matches);
    CHECK(r.exponent_p == doctest::Approx(3.0).epsilon(0.01));
    CHECK(r.roots[0] == doctest::Approx(0.0).scale(1).epsilon(0.01));
    CHECK(r.roots[1] == doctest::Approx(-2.0).epsilon(0.005));
  }
}

TEST_CASE("convergence and boundary sensitivity") {
  CHECK(refinement_order(1.0, bump) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(outer_sensitivity(1.0, bump) < 1e-3);
}

TEST_CASE("matched source stays in the decay window") {
  PoissonOptions opt;
  const double g = opt.gamma;
  RadialSolution m = solve_poisson(1.0, [g](double r) { return r < 1 ? 4 / g : std::pow(r, -4 + g); }, opt);
  CHECK(m.in_window);
}
