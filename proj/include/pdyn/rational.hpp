#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace pdyn {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p/q", "p", or a finite decimal such as "0.65" (-> 13/20) or "1e-3".
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form; q is always printed, even when it is 1.
std::string to_string(const Rational& r);

// Natural log of a positive rational without passing through a double value
// of r itself, so numerators and denominators far beyond the double range are
// handled.
double log_rational(const Rational& r);

// Fixed 17-significant-digit rendering used for every emitted float.
std::string format_double(double x);

// A real parameter value that may additionally carry an exact rational.
// Arithmetic on the exact part is only performed by code paths that need it
// (Bernoulli pmfs); everything else consumes to_double().
class Number {
 public:
  Number() = default;
  Number(double value) : value_(value) {}  // NOLINT(implicit)
  Number(const Rational& exact) : exact_(exact) {  // NOLINT(implicit)
    exact_->canonicalize();
    value_ = exact_->get_d();
  }

  static Number parse(std::string_view text) { return Number(parse_rational(text)); }

  double to_double() const { return value_; }
  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact() const { return *exact_; }

  std::string to_string() const;

  friend bool operator==(const Number& a, const Number& b) {
    if (a.is_exact() && b.is_exact()) return *a.exact_ == *b.exact_;
    return a.value_ == b.value_;
  }

 private:
  double value_ = 0.0;
  std::optional<Rational> exact_;
};

// Exact n choose k.
Integer binomial(unsigned long n, unsigned long k);

}  // namespace pdyn
