#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdyn/bipoly.hpp"

namespace pdyn {

// How the positivity of one coefficient polynomial on theta >= 0 is argued.
enum class PositivityArgument {
  Constant,    // a positive number
  LowerBound,  // p - q has non-negative coefficients and q >= 0 everywhere
  Minimum,     // the minimum over theta >= 0 is a positive number
};

struct CoefficientReport {
  std::string name;  // "a2", "e5", ...
  UniPoly computed;
  std::optional<UniPoly> published;  // the tabulated polynomial, where one exists
  bool matches_published = true;
  bool positive_exact = false;  // decided by a Sturm sequence
  PositivityArgument argument = PositivityArgument::Constant;
  std::optional<UniPoly> lower_bound;
  bool lower_bound_ok = true;
  std::optional<double> claimed_min;
  std::optional<double> claimed_argmin;
  double numeric_min = 0.0;
  double numeric_argmin = 0.0;
  bool minimum_ok = true;

  bool passed() const;
};

struct A4Certification {
  BiPoly A, B, C, E;
  std::vector<CoefficientReport> a_coeffs;  // a_4 .. a_0
  std::vector<CoefficientReport> e_coeffs;  // e_7 .. e_0

  bool passed() const;
  nlohmann::ordered_json to_json() const;
};

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The polynomials A, B, C in (m, theta) with n = m + 2.
BiPoly a4_polynomial_A();
BiPoly a4_polynomial_B();
BiPoly a4_polynomial_C();

// Tabulated coefficients e_7 .. e_0 of E = A^2 - B^2 C in powers of m.
std::vector<UniPoly> a4_published_e();

// Expands E exactly, compares every coefficient in m against the tabulated
// list and certifies positivity on theta >= 0 of every a_i and e_i. Throws
// CertificationError naming the first coefficient of E that does not match.
A4Certification certify_appendix_a4();

// Numeric minimum of p over [0, upper]: grid scan then Brent refinement.
struct NumericMinimum {
  double argmin;
  double value;
};
NumericMinimum minimize_on_interval(const UniPoly& p, double upper = 100.0);

}  // namespace pdyn
