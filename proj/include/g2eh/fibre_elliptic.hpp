// SPDX-License-Identifier: MIT
//
// U(2)-invariant Poisson problems on the Eguchi-Hanson space.  For a radial
// function u the Laplacian is -(1/rho)(rho kappa u')' with rho = r^3 sqrt(det h)
// and kappa = |dr|^2_h.
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace g2eh {

struct RadialGrid {
  std::vector<double> r;

  static RadialGrid log_spaced(double r0, double rmax, int n);
  int size() const { return static_cast<int>(r.size()); }
  // geometric midpoints, faces[i] between r[i] and r[i+1]
  double face(int i) const;
};

enum class OuterBC { Robin, Pinned };

// Finite-volume discretisation: A u = V f with A symmetric tridiagonal and
// V the cell volumes, so L = V^{-1} A is self-adjoint for sum_i V_i u_i v_i.
struct RadialOperator {
  RadialGrid grid;
  std::vector<double> volume, flux;  // flux[i]: rho kappa / dr across face i
  std::vector<double> lower, diag, upper;
  double rho_kappa_outer = 0;
  OuterBC outer = OuterBC::Robin;

  // coefficients sampled from metric_h along a ray
  static RadialOperator eguchi_hanson(double a, const RadialGrid& g, OuterBC bc = OuterBC::Robin);
  static RadialOperator from_coefficients(const std::function<double(double)>& rho,
                                          const std::function<double(double)>& rho_kappa, const RadialGrid& g,
                                          OuterBC bc = OuterBC::Robin);

  std::vector<double> apply_A(const std::vector<double>& u) const;
  std::vector<double> apply(const std::vector<double>& u) const;  // L u
  double inner(const std::vector<double>& u, const std::vector<double>& v) const;
  std::vector<double> solve_A(const std::vector<double>& b) const;  // Thomas
  // Iterative refinement from an initial guess; returns the number of sweeps.
  int refine(const std::vector<double>& b, std::vector<double>& x, double tol = 1e-15, int max_sweeps = 8) const;
};

// rho(r) and kappa(r) of h_a along a fixed ray
double eh_rho(double a, double r);
double eh_kappa(double a, double r);

struct PoissonOptions {
  double gamma = 0.25;
  double r0 = 1e-2, rmax = 1e3;
  int nodes = 1200;
  OuterBC outer = OuterBC::Robin;
  double pinned_value = 1.0;
  double fit_lo = 10, fit_hi = 100;
  bool check_source = true;
};

struct RadialSolution {
  std::vector<double> r, u;
  double residual = 0;    // |A u - V f| / |V f| (absolute if f = 0)
  double far_slope = 0;   // log-log slope of |u| on [fit_lo, fit_hi]; NaN if u vanishes there
  bool decaying = false;   // slope below -1, the midpoint of the indicial roots 0 and -2
  bool in_window = false;  // slope within [-2.1, -2 + gamma + 0.1]
  double weighted_ratio = 0;  // max / min of r^(2-gamma)|u| on the fit window
  std::string note;
};

RadialSolution solve_poisson(double a, const std::function<double(double)>& source, const PoissonOptions& opt = {});
RadialSolution solve_on(const RadialOperator& L, const std::function<double(double)>& source, const PoissonOptions& opt);

// Largest relative change of the solution on r <= fit_hi when rmax is doubled.
double outer_sensitivity(double a, const std::function<double(double)>& source, PoissonOptions opt = {});

// Observed convergence order under two node doublings, compared on common nodes.
double refinement_order(double a, const std::function<double(double)>& source, PoissonOptions opt = {});

struct RateReport {
  double a;
  double exponent_p;  // rho kappa ~ r^p at infinity
  double kappa_inf;
  double roots[2];    // indicial roots of (r^p u')' = 0
  bool matches = false;  // roots == {0, -2} within 0.01
};
RateReport verify_rates(double a, double r_lo = 1e2, double r_hi = 1e3);

}  // namespace g2eh
