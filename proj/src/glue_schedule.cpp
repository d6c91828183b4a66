// SPDX-License-Identifier: MIT
#include "g2eh/glue_schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace g2eh {

namespace {

Rational q(long p, long r = 1) { return Num<Rational>::from_ratio(p, r); }

}  // namespace

std::string Affine::str() const {
  if (d == 0) return c.get_str();
  std::string s = c == 0 ? "" : c.get_str();
  Rational m = abs(d);
  std::string coef = m == 1 ? "" : m.get_str() + "*";
  if (d < 0)
    s += "-" + coef + "gamma";
  else
    s += (c == 0 ? "" : "+") + coef + "gamma";
  return s;
}

Affine operator+(const Affine& x, const Affine& y) { return {x.c + y.c, x.d + y.d}; }
Affine operator-(const Affine& x, const Affine& y) { return {x.c - y.c, x.d - y.d}; }
Affine operator*(const Rational& s, const Affine& x) { return {s * x.c, s * x.d}; }
bool operator==(const Affine& x, const Affine& y) { return x.c == y.c && x.d == y.d; }

const Affine& min_exponent(const Affine& x, const Affine& y, const std::optional<Rational>& gamma) {
  if (gamma) {
    Rational vx = x.at(*gamma), vy = y.at(*gamma);
    if (vx != vy) return vx < vy ? x : y;
  }
  if (x.c != y.c) return x.c < y.c ? x : y;
  return x.d <= y.d ? x : y;
}

double CutoffFn::derivative(double x, int order) const {
  if (x <= 1 || x >= 2) return (order == 0 && x >= 2) ? 1.0 : 0.0;
  double s = x - 1, out = 0;
  for (int i = order; i < 6; ++i) {
    double f = 1;
    for (int j = 0; j < order; ++j) f *= i - j;
    out += coefficients[i] * f * std::pow(s, i - order);
  }
  return out;
}

Rational CutoffFn::exact(const Rational& x) const {
  if (x <= 1) return 0;
  if (x >= 2) return 1;
  Rational s = x - 1, p = 1, out = 0;
  for (int c : coefficients) {
    out += c * p;
    p *= s;
  }
  return out;
}

RegionSchedule::RegionSchedule(double t_, double R_) : t(t_), R(R_) {
  if (!(t > 0) || !(R > 0)) throw std::invalid_argument("schedule needs t, R > 0");
}

std::array<double, 6> RegionSchedule::boundaries() const {
  double a = std::pow(t, -1.0 / 9), b = std::pow(t, -0.8);
  return {1.0, a, 2 * a, b, 2 * b, R / t};
}

bool RegionSchedule::ordered() const {
  auto b = boundaries();
  for (int i = 0; i + 1 < 6; ++i)
    if (!(b[i] < b[i + 1])) return false;
  return true;
}

int region_of(double t, double R, double rcheck, bool outside_tube) {
  RegionSchedule s(t, R);
  if (!s.ordered()) throw std::domain_error("schedule regions are not nested for this t, R");
  if (!(rcheck >= 0)) throw std::invalid_argument("rcheck must be non-negative");
  auto b = s.boundaries();
  for (int i = 0; i < 5; ++i)
    if (rcheck <= b[i]) return i + 1;
  if (rcheck < b[5]) return 6;
  if (!outside_tube) throw std::domain_error("rcheck >= R/t lies outside the tube");
  return 7;
}

const std::vector<Region>& regions() {
  static const std::vector<Region> r = [] {
    std::vector<Region> v;
    v.push_back({1, "rcheck <= 1", true, false, 0, 0});
    v.push_back({2, "1 <= rcheck <= t^-1/9", false, false, 0, q(-1, 9)});
    v.push_back({3, "t^-1/9 <= rcheck <= 2t^-1/9", false, false, q(-1, 9), q(-1, 9)});
    v.push_back({4, "2t^-1/9 <= rcheck <= t^-4/5", false, false, q(-1, 9), q(-4, 5)});
    v.push_back({5, "t^-4/5 <= rcheck <= 2t^-4/5", false, false, q(-4, 5), q(-4, 5)});
    v.push_back({6, "2t^-4/5 <= rcheck < R/t", false, true, 0, 0});
    v.push_back({7, "outside the tube", false, true, 0, 0});
    return v;
  }();
  return r;
}

std::vector<PowerLawBound> pointwise_bound() {
  const std::string n0 = "Theta(phi)-psi", n1 = "d(Theta(phi)-psi)";
  std::vector<PowerLawBound> v;
  auto add = [&](int region, Affine a0, Affine b0, Affine a1, Affine b1, bool zero = false) {
    v.push_back({n0, a0, b0, region, 0, zero});
    v.push_back({n1, a1, b1, region, 1, zero});
  };
  const Affine z;
  add(1, q(2), z, q(1), z);
  add(2, q(2), q(2), q(1), q(1));
  add(3, q(16, 9), z, q(8, 9), z);
  add(4, q(2), Affine(q(-2), 1), q(1), Affine(q(-3), 1));
  add(5, q(16, 5), z, q(3), z);
  add(6, z, z, z, z, true);
  add(7, z, z, z, z, true);
  return v;
}

const PowerLawBound& bound_for(const std::vector<PowerLawBound>& all, int region, int k) {
  for (const auto& b : all)
    if (b.region == region && b.k == k) return b;
  throw std::out_of_range("no bound for this region");
}

NormExponent c0_exponent(const PowerLawBound& bound, const Region& reg, const std::optional<Rational>& gamma) {
  NormExponent e;
  if (bound.zero || reg.zero) {
    e.zero = true;
    return e;
  }
  if (reg.ball) {
    e.exponent = bound.a;
    return e;
  }
  Affine atA = bound.a + reg.eA * bound.b, atB = bound.a + reg.eB * bound.b;
  e.exponent = min_exponent(atA, atB, gamma);
  return e;
}

NormExponent lp_exponent(const PowerLawBound& bound, int p, const Rational& eA, const Rational& eB,
                         const std::optional<Rational>& gamma) {
  if (p <= 0) throw std::invalid_argument("p must be positive");
  NormExponent e;
  if (bound.zero) {
    e.zero = true;
    return e;
  }
  Rational four_p = q(4, p);
  Affine shifted = bound.b + Affine(four_p);
  e.logarithmic = shifted.is_zero() || (gamma && shifted.at(*gamma) == 0);
  Affine base = bound.a + Affine(four_p);
  // t^(a + 4/p) (A^(b + 4/p) + B^(b + 4/p))
  e.exponent = min_exponent(base + eA * shifted, base + eB * shifted, gamma);
  return e;
}

NormExponent lp_exponent(const PowerLawBound& bound, int p, const Region& reg, const std::optional<Rational>& gamma) {
  if (reg.zero) {
    NormExponent e;
    e.zero = true;
    return e;
  }
  if (reg.ball) {
    NormExponent e;
    if (bound.zero) {
      e.zero = true;
      return e;
    }
    e.exponent = bound.a + Affine(q(4, p));
    return e;
  }
  return lp_exponent(bound, p, reg.eA, reg.eB, gamma);
}

TorsionTable torsion_table(const std::optional<Rational>& gamma) {
  if (gamma && (*gamma <= 0 || *gamma >= 1)) throw std::invalid_argument("gamma must lie in (0, 1)");
  TorsionTable T;
  T.gamma = gamma;
  auto bounds = pointwise_bound();
  const auto& regs = regions();
  for (int i = 0; i < 5; ++i) {
    const Region& reg = regs[i];
    TableRow row;
    row.label = reg.desc;
    row.cells[0] = c0_exponent(bound_for(bounds, reg.label, 0), reg, gamma);
    row.cells[1] = lp_exponent(bound_for(bounds, reg.label, 0), 2, reg, gamma);
    row.cells[2] = lp_exponent(bound_for(bounds, reg.label, 1), 14, reg, gamma);
    T.rows.push_back(row);
  }
  // regions 6 and 7 share one row
  TableRow outer;
  outer.label = "rcheck >= 2t^-4/5";
  for (auto& c : outer.cells) c.zero = true;
  T.rows.push_back(outer);

  for (int col = 0; col < 3; ++col) {
    std::optional<Affine> best;
    for (const auto& row : T.rows) {
      if (row.cells[col].zero) continue;
      best = best ? min_exponent(*best, row.cells[col].exponent, gamma) : row.cells[col].exponent;
    }
    T.aggregate[col] = *best;
  }
  return T;
}

std::vector<std::array<NormExponent, 3>> reference_table() {
  auto cell = [](Affine a) {
    NormExponent e;
    e.exponent = a;
    return e;
  };
  NormExponent z;
  z.zero = true;
  return {
      {cell(q(2)), cell(q(4)), cell(q(9, 7))},
      {cell(q(16, 9)), cell(q(32, 9)), cell(q(8, 7))},
      {cell(q(16, 9)), cell(q(32, 9)), cell(q(8, 7))},
      {cell(Affine(q(20, 9), q(-1, 9))), cell(Affine(q(4), q(-4, 5))), cell(Affine(q(100, 63), q(-1, 9)))},
      {cell(q(16, 5)), cell(q(18, 5)), cell(q(107, 35))},
      {z, z, z},
  };
}

AlphaWindow alpha_window(const Rational& c0, const Rational& l2, const Rational& l14) {
  AlphaWindow w;
  w.limits = {c0, l2 - q(7, 2), l14 + q(1, 2)};
  Rational m = w.limits[0];
  for (const auto& x : w.limits) m = x < m ? x : m;
  if (m <= 0) {
    w.alpha = 0;
    w.empty = true;
  } else {
    w.alpha = m;
  }
  return w;
}

AlphaWindow alpha_window(const TorsionTable& table) {
  auto value = [&](const Affine& a) {
    if (a.d != 0 && !table.gamma) throw std::invalid_argument("aggregate depends on gamma; supply a value");
    return table.gamma ? a.at(*table.gamma) : a.c;
  };
  return alpha_window(value(table.aggregate[0]), value(table.aggregate[1]), value(table.aggregate[2]));
}

std::vector<BoundaryCheck> boundary_consistency(int k, const std::optional<Rational>& gamma) {
  auto bounds = pointwise_bound();
  const auto& regs = regions();
  auto value_at = [&](int region, const Rational& e) {
    const PowerLawBound& b = bound_for(bounds, region, k);
    return b.a + e * b.b;
  };
  std::vector<BoundaryCheck> out;
  // boundary t-exponents: 1 -> 0, t^-1/9, 2t^-1/9, t^-4/5
  const Rational edge[4] = {0, q(-1, 9), q(-1, 9), q(-4, 5)};
  for (int i = 0; i < 4; ++i) {
    BoundaryCheck c;
    c.left = regs[i].label;
    c.right = regs[i + 1].label;
    c.left_value = value_at(c.left, edge[i]);
    c.right_value = value_at(c.right, edge[i]);
    c.agree = gamma ? c.left_value.at(*gamma) == c.right_value.at(*gamma) : c.left_value == c.right_value;
    out.push_back(c);
  }
  return out;
}

}  // namespace g2eh
