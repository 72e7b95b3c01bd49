#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pdyn/rational.hpp"

namespace pdyn {

// Univariate polynomial in theta with exact integer coefficients, stored in
// ascending order of degree with no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(std::initializer_list<long> ascending);
  explicit UniPoly(std::vector<Integer> ascending);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  Integer coefficient(int power) const;

  double eval(double theta) const;
  Rational eval(const Rational& theta) const;
  UniPoly derivative() const;

  // "128*theta^2 - 256*theta + 1920", descending powers.
  std::string to_string(const std::string& var = "theta") const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

// Number of distinct real roots of p in the half-open interval (a, +inf),
// by an exact Sturm sequence. p must be nonzero.
int count_roots_above(const UniPoly& p, const Rational& a);

// True when p(theta) > 0 for every theta >= 0, decided exactly.
bool positive_on_nonnegative_axis(const UniPoly& p);

// Exact polynomial in (m, theta) with integer coefficients.
class BiPoly {
 public:
  BiPoly() = default;
  static BiPoly constant(const Integer& c);
  static BiPoly m();
  static BiPoly theta();
  // sum_j c_j theta^j, placed at m^power
  static BiPoly from_theta_poly(const UniPoly& p, int m_power = 0);

  // Coefficient of m^i theta^j.
  Integer coefficient(int i, int j) const;
  int degree_m() const;
  int total_degree() const;
  bool is_zero() const { return terms_.empty(); }
  // The coefficient of m^i as a polynomial in theta.
  UniPoly coefficient_in_m(int i) const;
  double eval(double m, double theta) const;

  BiPoly pow(unsigned e) const;

  // Graded order: total degree descending, then m-degree descending.
  std::string to_string() const;

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(int i, int j, const Integer& c);
  std::map<std::pair<int, int>, Integer> terms_;
};

}  // namespace pdyn
