// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace g2eh {

using Rational = mpq_class;

// Per-scalar helpers.  Exact mode never rounds: roots that are not
// rational throw instead of approximating.
template <class S> struct Num;

template <> struct Num<double> {
  static constexpr bool exact = false;
  static double from_ratio(long p, long q) { return double(p) / double(q); }
  static double to_double(double x) { return x; }
  static bool is_zero(double x, double tol = 0.0) { return std::fabs(x) <= tol; }
  static double abs(double x) { return std::fabs(x); }
  static double sqrt(double x) {
    if (x < 0) throw std::domain_error("sqrt of negative");
    return std::sqrt(x);
  }
  // real n-th root, odd n allows negative input
  static double root(double x, int n) {
    if (x < 0) {
      if (n % 2 == 0) throw std::domain_error("even root of negative");
      return -std::pow(-x, 1.0 / n);
    }
    return std::pow(x, 1.0 / n);
  }
  static int sign(double x) { return (x > 0) - (x < 0); }
  static std::string str(double x) { return std::to_string(x); }
};

namespace detail {
inline mpz_class exact_zroot(const mpz_class& z, int n) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(n)) == 0)
    throw std::domain_error("no exact rational root");
  return r;
}
}  // namespace detail

template <> struct Num<Rational> {
  static constexpr bool exact = true;
  static Rational from_ratio(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
  static double to_double(const Rational& x) { return x.get_d(); }
  static bool is_zero(const Rational& x, double = 0.0) { return sgn(x) == 0; }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static Rational root(const Rational& x, int n) {
    if (sgn(x) < 0) {
      if (n % 2 == 0) throw std::domain_error("even root of negative");
      return -root(-x, n);
    }
    Rational r(detail::exact_zroot(x.get_num(), n), detail::exact_zroot(x.get_den(), n));
    r.canonicalize();
    return r;
  }
  static Rational sqrt(const Rational& x) { return root(x, 2); }
  static int sign(const Rational& x) { return sgn(x); }
  static std::string str(const Rational& x) { return x.get_str(); }
};

// "p/q" or "p" -> Rational
inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace g2eh
