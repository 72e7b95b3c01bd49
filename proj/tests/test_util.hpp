#pragma once

#include "pdyn/rational.hpp"

// mpq equality needs canonical operands; build test rationals through here.
inline pdyn::Rational q(long num, long den) {
  pdyn::Rational r(num, den);
  r.canonicalize();
  return r;
}

inline pdyn::Rational q(const pdyn::Integer& num, const pdyn::Integer& den) {
  pdyn::Rational r(num, den);
  r.canonicalize();
  return r;
}
