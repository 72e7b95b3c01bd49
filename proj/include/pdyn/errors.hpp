#pragma once

#include <stdexcept>
#include <string>

namespace pdyn {

// Parameter or observation outside the admissible set.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A (family, prior) pairing that has no implemented closed form.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Observation that has zero likelihood under every prior atom.
class ImpossibleObservation : public std::runtime_error {
 public:
  ImpossibleObservation() : std::runtime_error("impossible observation under prior support") {}
};

// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial, double error_estimate)
      : std::runtime_error(what), partial_(partial), error_estimate_(error_estimate) {}
  double partial() const { return partial_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double partial_;
  double error_estimate_;
};

// File could not be written or read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pdyn
