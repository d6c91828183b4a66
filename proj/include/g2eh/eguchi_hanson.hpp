// SPDX-License-Identifier: MIT
//
// The Eguchi-Hanson family on the double cover C^2 \ {0}, coordinates
// y1..y4 with z1 = y1 + i y2, z2 = y3 + i y4.
#pragma once

#include <array>
#include <functional>

#include "g2eh/forms.hpp"
#include "g2eh/g2.hpp"

namespace g2eh {

struct EHParams {
  double a = 1.0;
  double t = 1.0;

  EHParams() = default;
  EHParams(double a_, double t_ = 1.0);
};

struct Potential {
  double f, f1, f2;
};

// f_a and its first two derivatives from the first closed form.
Potential potential(double a, double r);
// The two algebraic forms of f_a, evaluated separately.
double potential_form1(double a, double r);
double potential_form2(double a, double r);

class RadialProfile {
 public:
  explicit RadialProfile(double a);

  double a() const { return a_; }
  // d^k f_a / dr^k for k = 0..4
  double f(double r, int k = 0) const;
  // G_a = f_a - r^2, evaluated without cancellation, k = 0..2
  double G(double r, int k = 0) const;
  // H_a(u) = sqrt(u + a^2) - a log(sqrt(u + a^2) + a), u > -a^2
  double H(double u) const;

 private:
  double a_;
};

double radius(const Point& y);

// -1/4 d[I d f_a(r)] from the analytic Hessian of f_a(r(y)).
KForm<double> omegaI(const EHParams& p, const Point& y);
// Flat omega^J, omega^K (a-independent).
KForm<double> omegaJ();
KForm<double> omegaK();
// h_a(u, v) = omega^I_a(u, I v)
Mat<double> metric_h(const EHParams& p, const Point& y);

// Kaehler form and metric of a general radial potential with f'(r), f''(r).
KForm<double> radial_kaehler_form(double df, double d2f, const Point& y);

// Area of the zero section in the metric t^2 h_a.
struct BoltArea {
  double area;
  double error_estimate;
  double section_radius;
};
BoltArea bolt_area(const EHParams& p);

struct ProductStructure {
  KForm<double> phi, psi;
  Mat<double> g;
};
// (x1, x2, x3, y1..y4) -> the scaled product triple
ProductStructure product_structure(const EHParams& p, const Point& x);
FormField product_phi_field(const EHParams& p);
FormField product_psi_field(const EHParams& p);

// Ricci tensor of a metric field by 4th-order central differences with step h.
using MetricField = std::function<Mat<double>(const Point&)>;
Mat<double> ricci_fd(const MetricField& g, const Point& p, double h);

double max_abs(const Mat<double>& m);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct DecayFit {
  std::vector<double> r, dev;
  double slope;
};
// |h_a - h_0| (max entry) along a fixed generic ray, log-spaced radii.
DecayFit ale_decay(double a, double r0, double r1, int samples);

}  // namespace g2eh
