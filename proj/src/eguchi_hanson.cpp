// SPDX-License-Identifier: MIT
#include "g2eh/eguchi_hanson.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "g2eh/hk4.hpp"

namespace g2eh {

EHParams::EHParams(double a_, double t_) : a(a_), t(t_) {
  if (!(a > 0) || !(t > 0)) throw std::invalid_argument("Eguchi-Hanson parameters must be positive");
}

namespace {

void check_radius(double r) {
  if (!(r > 0)) throw std::domain_error("Eguchi-Hanson quantities need r > 0");
}

// I acting on 1-forms (column i = image of dy_{i+1})
const Mat<double>& I_forms() {
  static const Mat<double> I = QuaternionicFrame<double>::standard().J[0];
  return I;
}

}  // namespace

double potential_form1(double a, double r) {
  check_radius(r);
  double S = std::sqrt(r * r * r * r + a * a);
  return S - a * std::log((S + a) / (r * r));
}

double potential_form2(double a, double r) {
  check_radius(r);
  double S = std::sqrt(r * r * r * r + a * a);
  return S + 2 * a * std::log(r) - a * std::log(S + a);
}

Potential potential(double a, double r) {
  RadialProfile P(a);
  return {P.f(r, 0), P.f(r, 1), P.f(r, 2)};
}

RadialProfile::RadialProfile(double a) : a_(a) {
  if (!(a > 0)) throw std::invalid_argument("a must be positive");
}

double RadialProfile::f(double r, int k) const {
  check_radius(r);
  if (k == 0) return potential_form1(a_, r);
  if (k < 0 || k > 4) throw std::invalid_argument("derivative order must be 0..4");
  const double a2 = a_ * a_, r2 = r * r, r3 = r2 * r, r6 = r3 * r3;
  const double S = std::sqrt(r2 * r2 + a2);
  const double S3 = S * S * S, S5 = S3 * S * S;
  const double dS[4] = {S, 2 * r3 / S, (2 * r6 + 6 * a2 * r2) / S3,
                        (12 * r3 * r2 + 12 * a2 * r) / S3 - 6 * r3 * (2 * r6 + 6 * a2 * r2) / S5};
  // f' = 2 S / r; Leibniz rule with (1/r)^(j) = (-1)^j j! / r^(j+1)
  const int m = k - 1;
  double sum = 0, fact = 1;
  for (int j = 0; j <= m; ++j) {
    if (j > 0) fact *= j;
    int i = m - j;
    double inv = (j % 2 ? -1.0 : 1.0) * fact / std::pow(r, j + 1);
    double binom_mj = 1;
    for (int q = 1; q <= j; ++q) binom_mj = binom_mj * (m - q + 1) / q;
    sum += binom_mj * dS[i] * inv;
  }
  return 2 * sum;
}

double RadialProfile::G(double r, int k) const {
  check_radius(r);
  const double a = a_, r2 = r * r, a2 = a * a;
  const double S = std::sqrt(r2 * r2 + a2);
  switch (k) {
    case 0: {
      // S - r^2 - a log((S + a)/r^2), with (S + a)/r^2 - 1 = (S - r^2 + a)/r^2
      double excess = a2 / (S + r2);
      return excess - a * std::log1p((excess + a) / r2);
    }
    case 1:
      return 2 * a2 / (r * (S + r2));
    case 2:
      return -2 * a2 * (r2 / (S + r2) + 1) / (r2 * S);
    default:
      throw std::invalid_argument("G derivative order must be 0..2");
  }
}

double RadialProfile::H(double u) const {
  if (!(u > -a_ * a_)) throw std::domain_error("H_a defined on (-a^2, inf)");
  double s = std::sqrt(u + a_ * a_);
  return s - a_ * std::log(s + a_);
}

double radius(const Point& y) {
  double s = 0;
  for (double v : y) s += v * v;
  return std::sqrt(s);
}

KForm<double> radial_kaehler_form(double df, double d2f, const Point& y) {
  double r = radius(y);
  check_radius(r);
  double yh[4];
  for (int i = 0; i < 4; ++i) yh[i] = y[i] / r;
  // Hessian of f(r(y)): f'' yh yh^T + (f'/r)(1 - yh yh^T)
  Mat<double> H(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) H(i, j) = d2f * yh[i] * yh[j] + df / r * ((i == j) - yh[i] * yh[j]);
  Mat<double> A = H * I_forms().transpose();
  KForm<double> w(4, 2);
  for (int j = 0; j < 4; ++j)
    for (int k = j + 1; k < 4; ++k)
      w.at(static_cast<uint8_t>(1u << j | 1u << k)) = -0.25 * (A(j, k) - A(k, j));
  return w;
}

KForm<double> omegaI(const EHParams& p, const Point& y) {
  if (y.size() != 4) throw std::invalid_argument("omegaI expects a point of R^4");
  double r = radius(y);
  check_radius(r);
  RadialProfile P(p.a);
  return radial_kaehler_form(P.f(r, 1), P.f(r, 2), y);
}

KForm<double> omegaJ() { return QuaternionicFrame<double>::standard().omega[1]; }
KForm<double> omegaK() { return QuaternionicFrame<double>::standard().omega[2]; }

Mat<double> metric_h(const EHParams& p, const Point& y) {
  KForm<double> w = omegaI(p, y);
  Mat<double> W(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      uint8_t m = static_cast<uint8_t>(1u << i | 1u << j);
      W(i, j) = i < j ? w.at(m) : -w.at(m);
    }
  // I on vectors is the transpose of its action on 1-forms
  Mat<double> h = W * I_forms().transpose();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) {
      double s = 0.5 * (h(i, j) + h(j, i));
      h(i, j) = h(j, i) = s;
    }
  return h;
}

BoltArea bolt_area(const EHParams& p) {
  using boost::math::quadrature::gauss_kronrod;
  // Sections zeta -> eps (1, zeta)/sqrt(1 + |zeta|^2) of the Hopf map on the
  // sphere r = eps converge to the bolt as eps -> 0; the correction from the
  // H_a term is O(eps^4 / a).
  const double eps = 1e-3 * std::sqrt(p.a);
  auto density = [&](double u, double v) {
    double N = 1 / std::sqrt(1 + u * u + v * v), N3 = N * N * N;
    Point y{eps * N, 0, eps * N * u, eps * N * v};
    double du[4] = {-u * N3, 0, N - u * u * N3, -u * v * N3};
    double dv[4] = {-v * N3, 0, -u * v * N3, N - v * v * N3};
    KForm<double> w = omegaI(p, y);
    double s = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        s += w.at(static_cast<uint8_t>(1u << i | 1u << j)) * (du[i] * dv[j] - du[j] * dv[i]);
    return s * eps * eps;
  };
  double err_outer = 0;
  double err_inner_max = 0;
  auto radial = [&](double theta) {
    double e = 0;
    double c = std::cos(theta), sn = std::sin(theta);
    double v = gauss_kronrod<double, 61>::integrate(
        [&](double s) { return density(s * c, s * sn) * s; }, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-12,
        &e);
    err_inner_max = std::max(err_inner_max, e);
    return v;
  };
  double total = gauss_kronrod<double, 31>::integrate(radial, 0.0, 2 * std::numbers::pi, 5, 1e-12, &err_outer);
  double t2 = p.t * p.t;
  return {t2 * total, t2 * (err_outer + 2 * std::numbers::pi * err_inner_max), eps};
}

ProductStructure product_structure(const EHParams& p, const Point& x) {
  if (x.size() != 7) throw std::invalid_argument("product_structure expects a point of R^7");
  Point y(x.begin() + 3, x.end());
  Mat<double> h = metric_h(p, y);
  const double t2 = p.t * p.t, t4 = t2 * t2;
  KForm<double> w[3] = {embed_vertical(omegaI(p, y)), embed_vertical(omegaJ()), embed_vertical(omegaK())};
  using F = KForm<double>;
  ProductStructure out;
  out.phi = F::dx(7, {1, 2, 3});
  out.psi = (t4 * std::sqrt(det(h))) * F::dx(7, {4, 5, 6, 7});
  for (int k = 0; k < 3; ++k) {
    int a = (k + 1) % 3 + 1, b = (k + 2) % 3 + 1;
    out.phi -= t2 * wedge(w[k], F::dx(7, {k + 1}));
    out.psi -= t2 * wedge(w[k], F::dx(7, {a, b}));
  }
  out.g = Mat<double>::identity(7);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.g(3 + i, 3 + j) = t2 * h(i, j);
  return out;
}

FormField product_phi_field(const EHParams& p) {
  return [p](const Point& x) { return product_structure(p, x).phi; };
}

FormField product_psi_field(const EHParams& p) {
  return [p](const Point& x) { return product_structure(p, x).psi; };
}

double max_abs(const Mat<double>& m) {
  double s = 0;
  for (double v : m.a) s = std::max(s, std::fabs(v));
  return s;
}

Mat<double> ricci_fd(const MetricField& gf, const Point& p, double h) {
  const int n = static_cast<int>(p.size());
  auto at = [&](int i, double si, int j, double sj) {
    Point q = p;
    if (i >= 0) q[i] += si;
    if (j >= 0) q[j] += sj;
    return gf(q);
  };
  const double w1[4] = {1, -8, 8, -1}, s1[4] = {-2, -1, 1, 2};
  Mat<double> g = gf(p), gi = inverse(g);
  // dg[m](a,b) and ddg[m][l](a,b)
  std::vector<Mat<double>> dg(n, Mat<double>(n, n));
  std::vector<std::vector<Mat<double>>> ddg(n, std::vector<Mat<double>>(n, Mat<double>(n, n)));
  for (int m = 0; m < n; ++m) {
    Mat<double> gp1 = at(m, h, -1, 0), gm1 = at(m, -h, -1, 0), gp2 = at(m, 2 * h, -1, 0), gm2 = at(m, -2 * h, -1, 0);
    for (int e = 0; e < n * n; ++e) {
      dg[m].a[e] = (gm2.a[e] - 8 * gm1.a[e] + 8 * gp1.a[e] - gp2.a[e]) / (12 * h);
      ddg[m][m].a[e] = (-gp2.a[e] + 16 * gp1.a[e] - 30 * g.a[e] + 16 * gm1.a[e] - gm2.a[e]) / (12 * h * h);
    }
  }
  for (int m = 0; m < n; ++m)
    for (int l = m + 1; l < n; ++l) {
      Mat<double> acc(n, n);
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
          Mat<double> v = at(m, s1[x] * h, l, s1[y] * h);
          for (int e = 0; e < n * n; ++e) acc.a[e] += w1[x] * w1[y] * v.a[e];
        }
      for (int e = 0; e < n * n; ++e) acc.a[e] /= 144 * h * h;
      ddg[m][l] = ddg[l][m] = acc;
    }
  // Gamma^k_ij and d_m Gamma^k_ij
  auto idx = [n](int k, int i, int j) { return (k * n + i) * n + j; };
  std::vector<double> Gam(n * n * n, 0.0), dGam(n * n * n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) s += gi(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        Gam[idx(k, i, j)] = 0.5 * s;
      }
  for (int m = 0; m < n; ++m) {
    Mat<double> dgi = (gi * dg[m]) * gi;  // -d_m g^{-1}
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0;
          for (int l = 0; l < n; ++l)
            s += -dgi(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j)) +
                 gi(k, l) * (ddg[m][i](j, l) + ddg[m][j](i, l) - ddg[m][l](i, j));
          dGam[m * n * n * n + idx(k, i, j)] = 0.5 * s;
        }
  }
  Mat<double> R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) {
        s += dGam[k * n * n * n + idx(k, i, j)] - dGam[j * n * n * n + idx(k, i, k)];
        for (int l = 0; l < n; ++l) s += Gam[idx(k, k, l)] * Gam[idx(l, i, j)] - Gam[idx(k, j, l)] * Gam[idx(l, i, k)];
      }
      R(i, j) = s;
    }
  return R;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope needs matching samples");
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::domain_error("loglog_slope needs positive samples");
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DecayFit ale_decay(double a, double r0, double r1, int samples) {
  if (samples < 2 || !(r1 > r0) || !(r0 > 0)) throw std::invalid_argument("bad decay sampling range");
  const double dir[4] = {0.3, -0.5, 0.7, 0.4};
  double dn = 0;
  for (double d : dir) dn += d * d;
  dn = std::sqrt(dn);
  DecayFit fit;
  EHParams p(a);
  for (int i = 0; i < samples; ++i) {
    double r = r0 * std::pow(r1 / r0, static_cast<double>(i) / (samples - 1));
    Point y(4);
    for (int k = 0; k < 4; ++k) y[k] = r * dir[k] / dn;
    Mat<double> h = metric_h(p, y);
    for (int k = 0; k < 4; ++k) h(k, k) -= 1;
    fit.r.push_back(r);
    fit.dev.push_back(max_abs(h));
  }
  fit.slope = loglog_slope(fit.r, fit.dev);
  return fit;
}

}  // namespace g2eh
