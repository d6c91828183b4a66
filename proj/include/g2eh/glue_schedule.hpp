// SPDX-License-Identifier: MIT
//
// Gluing-region schedule, pointwise torsion bounds and the L^p exponent
// calculus.  Exponents are exact rationals, affine in the decay offset gamma.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "g2eh/scalar.hpp"

namespace g2eh {

// c + d * gamma
struct Affine {
  Rational c = 0, d = 0;

  Affine() = default;
  Affine(Rational c_, Rational d_ = 0) : c(std::move(c_)), d(std::move(d_)) {}
  Rational at(const Rational& gamma) const { return c + d * gamma; }
  bool is_zero() const { return c == 0 && d == 0; }
  std::string str() const;
};

Affine operator+(const Affine& x, const Affine& y);
Affine operator-(const Affine& x, const Affine& y);
Affine operator*(const Rational& s, const Affine& x);
bool operator==(const Affine& x, const Affine& y);

// Smaller exponent (the dominant power of t as t -> 0).  With gamma given the
// comparison is by value, ties broken lexicographically; without it gamma is
// treated as infinitesimal.
const Affine& min_exponent(const Affine& x, const Affine& y, const std::optional<Rational>& gamma = std::nullopt);

struct CutoffFn {
  // quintic smoothstep on [1, 2]: 10 s^3 - 15 s^4 + 6 s^5, s = x - 1
  static constexpr std::array<int, 6> coefficients{0, 0, 0, 10, -15, 6};
  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;
  Rational exact(const Rational& x) const;
};

struct RegionSchedule {
  double t, R;
  RegionSchedule(double t_, double R_);
  // 1, t^-1/9, 2 t^-1/9, t^-4/5, 2 t^-4/5, R/t
  std::array<double, 6> boundaries() const;
  bool ordered() const;
};

// Region 1..7 containing rcheck; boundaries belong to the lower-indexed region.
// rcheck >= R/t is region 7 only when outside_tube is set.
int region_of(double t, double R, double rcheck, bool outside_tube = false);

struct Region {
  int label;
  std::string desc;
  bool ball = false;  // rcheck <= 1, volume O(t^4)
  bool zero = false;  // bound is identically zero
  Rational eA = 0, eB = 0;  // A = t^eA <= rcheck <= B = t^eB (up to constants)
};
const std::vector<Region>& regions();

struct PowerLawBound {
  std::string name;
  Affine a, b;  // O(t^a rcheck^b)
  int region;
  int k;  // derivative order
  bool zero = false;
};

// The pointwise bounds on Theta(phi) - psi (k = 0) and its derivative (k = 1)
// for regions 1..7.
std::vector<PowerLawBound> pointwise_bound();
const PowerLawBound& bound_for(const std::vector<PowerLawBound>& all, int region, int k);

struct NormExponent {
  Affine exponent;
  bool zero = false;
  bool logarithmic = false;  // b + 4/p = 0: the power rule picks up a log t factor
};

// sup over A <= rcheck <= B of t^a rcheck^b
NormExponent c0_exponent(const PowerLawBound& bound, const Region& reg,
                         const std::optional<Rational>& gamma = std::nullopt);
// || O(t^a rcheck^b) ||_{L^p} with volume t^4 s^3 ds
NormExponent lp_exponent(const PowerLawBound& bound, int p, const Region& reg,
                         const std::optional<Rational>& gamma = std::nullopt);
NormExponent lp_exponent(const PowerLawBound& bound, int p, const Rational& eA, const Rational& eB,
                         const std::optional<Rational>& gamma = std::nullopt);

struct TableRow {
  std::string label;
  std::array<NormExponent, 3> cells;  // C0, L2, L14 of the derivative
};

struct TorsionTable {
  std::optional<Rational> gamma;
  std::vector<TableRow> rows;
  std::array<Affine, 3> aggregate;
};

TorsionTable torsion_table(const std::optional<Rational>& gamma = std::nullopt);

// Expected values of the table, row by row, for report verdicts.
std::vector<std::array<NormExponent, 3>> reference_table();

struct AlphaWindow {
  Rational alpha;
  bool empty = false;
  std::array<Rational, 3> limits;  // C0, L2 - 7/2, L14 + 1/2
};
AlphaWindow alpha_window(const Rational& c0, const Rational& l2, const Rational& l14);
AlphaWindow alpha_window(const TorsionTable& table);

struct BoundaryCheck {
  int left, right;  // regions sharing the boundary
  Affine left_value, right_value;
  bool agree;
};
std::vector<BoundaryCheck> boundary_consistency(int k, const std::optional<Rational>& gamma = std::nullopt);

}  // namespace g2eh
