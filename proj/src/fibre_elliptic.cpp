// SPDX-License-Identifier: MIT
#include "g2eh/fibre_elliptic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "g2eh/eguchi_hanson.hpp"

namespace g2eh {

RadialGrid RadialGrid::log_spaced(double r0, double rmax, int n) {
  if (!(r0 > 0) || n < 3) throw std::invalid_argument("radial grid needs r0 > 0 and at least 3 nodes");
  if (rmax / r0 < 1e3) throw std::invalid_argument("grid too small to observe decay (rmax/r0 < 1e3)");
  RadialGrid g;
  for (int i = 0; i < n; ++i) g.r.push_back(r0 * std::pow(rmax / r0, static_cast<double>(i) / (n - 1)));
  return g;
}

double RadialGrid::face(int i) const { return std::sqrt(r[i] * r[i + 1]); }

namespace {

const double kRay[4] = {0.5, 0.5, 0.5, 0.5};

Eigen::Matrix4d eh_metric(double a, double r) {
  Point y(4);
  for (int k = 0; k < 4; ++k) y[k] = r * kRay[k];
  Mat<double> h = metric_h(EHParams(a), y);
  Eigen::Matrix4d M;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) M(i, j) = h(i, j);
  return M;
}

}  // namespace

double eh_rho(double a, double r) {
  // eigenvalues rather than the cofactor determinant: h has entries ~a/r^2 and
  // eigenvalues down to ~r^2/a near the bolt
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(eh_metric(a, r), Eigen::EigenvaluesOnly);
  return r * r * r * std::sqrt(es.eigenvalues().prod());
}

double eh_kappa(double a, double r) {
  Eigen::Vector4d yh(kRay[0], kRay[1], kRay[2], kRay[3]);
  return yh.dot(eh_metric(a, r).ldlt().solve(yh));
}

RadialOperator RadialOperator::from_coefficients(const std::function<double(double)>& rho,
                                                 const std::function<double(double)>& rho_kappa, const RadialGrid& g,
                                                 OuterBC bc) {
  RadialOperator L;
  L.grid = g;
  L.outer = bc;
  const int n = g.size();
  L.volume.assign(n, 0);
  L.flux.assign(n - 1, 0);
  for (int i = 0; i < n; ++i) {
    double lo = i == 0 ? g.r[0] : g.face(i - 1);
    double hi = i == n - 1 ? g.r[n - 1] : g.face(i);
    L.volume[i] = rho(g.r[i]) * (hi - lo);
  }
  for (int i = 0; i + 1 < n; ++i) L.flux[i] = rho_kappa(g.face(i)) / (g.r[i + 1] - g.r[i]);
  L.rho_kappa_outer = rho_kappa(g.r[n - 1]);
  // zero flux through r0; A = -div(flux)
  L.lower.assign(n, 0);
  L.diag.assign(n, 0);
  L.upper.assign(n, 0);
  for (int i = 0; i + 1 < n; ++i) {
    L.diag[i] += L.flux[i];
    L.diag[i + 1] += L.flux[i];
    L.upper[i] = -L.flux[i];
    L.lower[i + 1] = -L.flux[i];
  }
  if (bc == OuterBC::Robin) {
    // outward flux rho kappa u' with u' = -2u/r
    L.diag[n - 1] += 2 * L.rho_kappa_outer / g.r[n - 1];
  } else {
    L.lower[n - 1] = 0;
    L.diag[n - 1] = 1;
  }
  return L;
}

RadialOperator RadialOperator::eguchi_hanson(double a, const RadialGrid& g, OuterBC bc) {
  return from_coefficients([a](double r) { return eh_rho(a, r); },
                           [a](double r) { return eh_rho(a, r) * eh_kappa(a, r); }, g, bc);
}

std::vector<double> RadialOperator::apply_A(const std::vector<double>& u) const {
  const int n = grid.size();
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double s = diag[i] * u[i];
    if (i > 0) s += lower[i] * u[i - 1];
    if (i + 1 < n) s += upper[i] * u[i + 1];
    out[i] = s;
  }
  return out;
}

std::vector<double> RadialOperator::apply(const std::vector<double>& u) const {
  std::vector<double> out = apply_A(u);
  for (size_t i = 0; i < out.size(); ++i) out[i] /= volume[i];
  return out;
}

double RadialOperator::inner(const std::vector<double>& u, const std::vector<double>& v) const {
  double s = 0;
  for (size_t i = 0; i < u.size(); ++i) s += volume[i] * u[i] * v[i];
  return s;
}

std::vector<double> RadialOperator::solve_A(const std::vector<double>& b) const {
  const int n = grid.size();
  std::vector<double> c(n), d(n), x(n);
  double m = diag[0];
  c[0] = upper[0] / m;
  d[0] = b[0] / m;
  for (int i = 1; i < n; ++i) {
    m = diag[i] - lower[i] * c[i - 1];
    if (m == 0) throw std::runtime_error("singular radial system");
    c[i] = i + 1 < n ? upper[i] / m : 0;
    d[i] = (b[i] - lower[i] * d[i - 1]) / m;
  }
  x[n - 1] = d[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

int RadialOperator::refine(const std::vector<double>& b, std::vector<double>& x, double tol, int max_sweeps) const {
  double xn = 0;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    std::vector<double> Ax = apply_A(x), res(b.size());
    for (size_t i = 0; i < b.size(); ++i) res[i] = b[i] - Ax[i];
    std::vector<double> dx = solve_A(res);
    double dn = 0;
    xn = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      x[i] += dx[i];
      dn = std::max(dn, std::fabs(dx[i]));
      xn = std::max(xn, std::fabs(x[i]));
    }
    if (dn <= tol * std::max(xn, 1e-300)) return sweep;
  }
  return max_sweeps;
}

namespace {

double far_field_slope(const RadialGrid& g, const std::vector<double>& u, double lo, double hi) {
  std::vector<double> xs, ys;
  for (int i = 0; i < g.size(); ++i)
    if (g.r[i] >= lo && g.r[i] <= hi) {
      if (u[i] == 0) return std::numeric_limits<double>::quiet_NaN();
      xs.push_back(g.r[i]);
      ys.push_back(std::fabs(u[i]));
    }
  if (xs.size() < 2) throw std::invalid_argument("fit window holds fewer than two nodes");
  return loglog_slope(xs, ys);
}

void check_source(const RadialGrid& g, const std::function<double(double)>& f, double gamma) {
  // the tail over the last decade must decay at least like r^(-4+gamma)
  const double hi = g.r.back(), lo = hi / 10;
  std::vector<double> xs, ys;
  for (double r : g.r)
    if (r >= lo) {
      double v = std::fabs(f(r));
      if (!std::isfinite(v)) throw std::domain_error("source is not finite");
      if (v > 0) {
        xs.push_back(r);
        ys.push_back(v);
      }
    }
  if (xs.size() < 2) return;
  if (loglog_slope(xs, ys) > -4 + gamma + 0.05) throw std::domain_error("non-decaying source");
}

}  // namespace

RadialSolution solve_on(const RadialOperator& L, const std::function<double(double)>& source,
                        const PoissonOptions& opt) {
  if (!(opt.gamma > 0) || opt.gamma > 0.5) throw std::invalid_argument("gamma must lie in (0, 0.5]");
  const RadialGrid& g = L.grid;
  if (opt.check_source) check_source(g, source, opt.gamma);
  const int n = g.size();
  std::vector<double> b(n);
  for (int i = 0; i < n; ++i) b[i] = L.volume[i] * source(g.r[i]);
  if (L.outer == OuterBC::Pinned) b[n - 1] = opt.pinned_value;

  RadialSolution s;
  s.r = g.r;
  s.u = L.solve_A(b);
  std::vector<double> Au = L.apply_A(s.u);
  double rn = 0, bn = 0;
  for (int i = 0; i < n; ++i) {
    rn += (Au[i] - b[i]) * (Au[i] - b[i]);
    bn += b[i] * b[i];
  }
  s.residual = bn > 0 ? std::sqrt(rn / bn) : std::sqrt(rn);
  s.far_slope = far_field_slope(g, s.u, opt.fit_lo, opt.fit_hi);
  if (std::isnan(s.far_slope)) {
    s.decaying = s.in_window = true;
    s.weighted_ratio = 1;
    s.note = "solution vanishes on the fit window";
  } else {
    s.decaying = s.far_slope < -1;
    s.in_window = s.far_slope >= -2 - 0.1 && s.far_slope <= -2 + opt.gamma + 0.1;
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (int i = 0; i < n; ++i)
      if (g.r[i] >= opt.fit_lo && g.r[i] <= opt.fit_hi) {
        double w = std::pow(g.r[i], 2 - opt.gamma) * std::fabs(s.u[i]);
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
    s.weighted_ratio = hi / lo;
    if (!s.decaying) s.note = "non-decaying: far-field slope above -1";
  }
  return s;
}

RadialSolution solve_poisson(double a, const std::function<double(double)>& source, const PoissonOptions& opt) {
  RadialGrid g = RadialGrid::log_spaced(opt.r0, opt.rmax, opt.nodes);
  return solve_on(RadialOperator::eguchi_hanson(a, g, opt.outer), source, opt);
}

double outer_sensitivity(double a, const std::function<double(double)>& source, PoissonOptions opt) {
  RadialSolution s1 = solve_poisson(a, source, opt);
  // same spacing in log r, twice the outer radius
  double step = std::log(opt.rmax / opt.r0) / (opt.nodes - 1);
  opt.nodes += static_cast<int>(std::lround(std::log(2.0) / step));
  opt.rmax *= std::exp(step * std::lround(std::log(2.0) / step));
  RadialSolution s2 = solve_poisson(a, source, opt);
  double worst = 0;
  for (size_t i = 0; i < s1.r.size() && s1.r[i] <= opt.fit_hi; ++i) {
    double scale = std::max(std::fabs(s1.u[i]), 1e-300);
    worst = std::max(worst, std::fabs(s1.u[i] - s2.u[i]) / scale);
  }
  return worst;
}

double refinement_order(double a, const std::function<double(double)>& source, PoissonOptions opt) {
  std::vector<RadialSolution> s;
  int n = opt.nodes;
  for (int level = 0; level < 3; ++level) {
    opt.nodes = (n - 1) * (1 << level) + 1;
    s.push_back(solve_poisson(a, source, opt));
  }
  double d1 = 0, d2 = 0;
  for (int i = 0; i < n; ++i) {
    d1 = std::max(d1, std::fabs(s[0].u[i] - s[1].u[2 * i]));
    d2 = std::max(d2, std::fabs(s[1].u[2 * i] - s[2].u[4 * i]));
  }
  return std::log2(d1 / d2);
}

RateReport verify_rates(double a, double r_lo, double r_hi) {
  RateReport rep;
  rep.a = a;
  std::vector<double> xs, ys;
  for (int i = 0; i <= 20; ++i) {
    double r = r_lo * std::pow(r_hi / r_lo, i / 20.0);
    xs.push_back(r);
    ys.push_back(eh_rho(a, r) * eh_kappa(a, r));
  }
  rep.exponent_p = loglog_slope(xs, ys);
  rep.kappa_inf = eh_kappa(a, r_hi);
  // r^m solves (r^p u')' = 0 iff m (m - 1 + p) = 0
  rep.roots[0] = 0;
  rep.roots[1] = 1 - rep.exponent_p;
  rep.matches = std::fabs(rep.roots[1] + 2) < 0.01;
  return rep;
}

}  // namespace g2eh
