// SPDX-License-Identifier: MIT
//
// Betti-number bookkeeping for resolutions of G2 orbifolds with codimension-4
// singular strata: quotient cohomology of finite affine actions on tori,
// involution spectra on K3, Kunneth products and the resolution formula.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "g2eh/linalg.hpp"
#include "g2eh/scalar.hpp"

namespace g2eh {

struct BettiVector {
  std::vector<long> b;  // b^0 .. b^n

  BettiVector() = default;
  explicit BettiVector(std::vector<long> v);
  static BettiVector zero(int n) { return BettiVector(std::vector<long>(n + 1, 0)); }

  int dim() const { return static_cast<int>(b.size()) - 1; }
  long operator[](int k) const { return k < 0 || k > dim() ? 0 : b[k]; }
  bool poincare_dual() const;
  long euler() const;
  std::string str() const;
  bool operator==(const BettiVector& o) const { return b == o.b; }
};

BettiVector operator+(const BettiVector& x, const BettiVector& y);
BettiVector operator*(long m, const BettiVector& x);
BettiVector kunneth(const BettiVector& x, const BettiVector& y);

BettiVector betti_sphere(int n);
BettiVector betti_torus(int n);
BettiVector betti_surface(int genus);

// b^k(N) = b^k(Q) + b^{k-2}(L), or with the twisted Betti numbers of L when given.
BettiVector resolve_betti(const BettiVector& quotient, const BettiVector& singular,
                          const std::optional<BettiVector>& twisted = std::nullopt);

// x -> D x + c on R^n / Z^n, c taken mod 1
struct AffineMap {
  Mat<Rational> linear;
  std::vector<Rational> translation;

  static AffineMap identity(int n);
  static AffineMap diagonal(const std::vector<int>& signs, const std::vector<Rational>& c = {});
  int n() const { return linear.rows; }
  AffineMap operator*(const AffineMap& h) const;  // this after h
  std::string key() const;
};

struct GroupElement {
  AffineMap map;
  std::vector<int> word;  // exponents mod 2 of the generators on the first path found
};

struct AffineAction {
  int n = 0;
  std::vector<AffineMap> generators;
  int max_order = 1024;

  // breadth-first closure; throws if the generated group exceeds max_order or a
  // linear part does not preserve the lattice
  std::vector<GroupElement> elements() const;
  // every linear part pulls phi0 back to itself (n = 7)
  bool preserves_phi0() const;
};

// dim of Gamma-invariant k-forms: (1/|G|) sum tr(Lambda^k D_g)
long invariant_betti(const AffineAction& action, int k);
BettiVector invariant_betti(const AffineAction& action);
// (1/|G|) sum Lambda^k D_g, acting on constant-coefficient k-forms
Mat<Rational> averaged_projector(const AffineAction& action, int k);

// Traces of a group action on cohomology, trace[element][degree].
struct Character {
  std::vector<std::vector<long>> trace;

  int degree() const { return trace.empty() ? -1 : static_cast<int>(trace[0].size()) - 1; }
  BettiVector invariant() const;
  // Z2 only: the -1 eigenspace, i.e. twisted cohomology of the free quotient
  BettiVector anti_invariant() const;
};

Character torus_character(const std::vector<GroupElement>& elems);
Character product(const Character& x, const Character& y);

struct InvolutionSpectrum {
  int plus, minus, chi_fix;
};
// involution of K3 from the Euler characteristic of its fixed set
InvolutionSpectrum k3_spectrum(int chi_fix);

// Joint eigenspace dimensions n[s] on H^2(K3) for commuting involutions a, b,
// index s = 2*(a = -1) + (b = -1), from the fixed-set Euler characteristics of a, b, ab.
std::array<int, 4> k3_joint_spectrum(int chi_a, int chi_b, int chi_ab);
// K3 character for a Z2^2 action whose elements carry generator words
Character k3_character(const std::vector<GroupElement>& elems, const std::array<int, 4>& joint);

// Traces (1, t1, t2) of a free involution on a closed orientable genus-g
// surface.  t2 = -1 if orientation-reversing; t1 then follows from Lefschetz.
// For even genus the involution is forced to reverse orientation.
std::vector<long> free_surface_involution_traces(int genus, std::optional<bool> reverses = std::nullopt);

// Components of the fixed set of one element on T^n (diagonal +-1 linear parts).
struct FixedOrbit {
  std::vector<Rational> label;  // coordinates on the -1 directions
  std::vector<int> stabilizer;  // indices into elements()
  BettiVector betti;            // of the fixed torus modulo the stabilizer
};
struct FixedLocus {
  int element;
  int fixed_dim = 0;
  int components = 0;  // in T^n
  std::vector<FixedOrbit> orbits;
};
std::vector<FixedLocus> fixed_loci(const AffineAction& action, const std::vector<GroupElement>& elems);

struct TopologyCheck {
  std::string id;
  long measured, expected;
  bool pass() const { return measured == expected; }
};

struct PresetReport {
  std::string name;
  BettiVector quotient, singular, result;
  std::optional<BettiVector> twisted;
  std::vector<TopologyCheck> checks;
  std::vector<std::string> flags;
  bool pass() const;
};

const std::vector<std::string>& preset_names();
PresetReport preset(const std::string& name);

}  // namespace g2eh
