#pragma once

#include <string>
#include <string_view>

#include "pdyn/rational.hpp"

namespace pdyn {

enum class FamilyKind { Bernoulli, Normal, Poisson, Exponential };

// Open real interval; infinite ends are represented by +-infinity.
struct Interval {
  double lo;
  double hi;
  bool contains(double x) const { return x > lo && x < hi; }
};

// One-dimensional exponential family p(x) = exp(eta(theta) T(x) - A(eta) - B(x)).
// The canonical parameterizations are
//   Bernoulli    eta = log(theta/(1-theta)), T = x
//   Normal       eta = theta,                T = x/sigma^2  (sigma fixed)
//   Poisson      eta = log(theta),           T = x
//   Exponential  eta = theta,                T = -x
// The sufficient statistic u_n is always the plain sum of observations.
class Family {
 public:
  static Family bernoulli() { return Family(FamilyKind::Bernoulli, 1.0); }
  static Family normal(double sigma);
  static Family poisson() { return Family(FamilyKind::Poisson, 1.0); }
  static Family exponential() { return Family(FamilyKind::Exponential, 1.0); }

  FamilyKind kind() const { return kind_; }
  // Only meaningful for the normal family.
  double sigma() const { return sigma_; }
  std::string_view name() const;
  bool is_discrete() const { return kind_ == FamilyKind::Bernoulli || kind_ == FamilyKind::Poisson; }

  Interval theta_domain() const;
  // Throws DomainError naming the violated bound.
  void check_theta(double theta) const;

  double eta(double theta) const;
  double eta_inverse(double eta) const;
  double log_partition(double eta) const;
  double sufficient_statistic(double x) const;
  double log_base_measure(double x) const;
  bool in_support(double x) const;

  friend bool operator==(const Family&, const Family&) = default;

 private:
  Family(FamilyKind kind, double sigma) : kind_(kind), sigma_(sigma) {}

  FamilyKind kind_;
  double sigma_;
};

double fisher_information(const Family& family, double theta);

struct GeometricAverage {
  double theta2;  // eta^{-1} of the mean natural parameter
  double w;       // squared Bhattacharyya coefficient, in (0, 1]
};

// Maps the (theta0, theta1) problem onto the diagonal (theta2, theta2) one.
GeometricAverage theta2_and_w(const Family& family, double theta0, double theta1);

// log p_theta(x); -infinity when x is outside the observation space.
// Bernoulli accepts the closed range theta in [0, 1] so that degenerate prior
// atoms can be evaluated.
double log_density(const Family& family, double theta, double x);

// log density (or pmf) of u_n = x_1 + ... + x_n given theta;
// -infinity outside the support of u_n.
double suff_stat_log_density(const Family& family, double theta, int n, double u);

// Exact Binomial(n, theta) pmf at k for rational theta in [0, 1].
Rational binomial_pmf_exact(const Rational& theta, int n, int k);

// Exact theta^k (1-theta)^(n-k), i.e. the probability of one particular
// Bernoulli sequence with k ones.
Rational bernoulli_sequence_prob(const Rational& theta, int n, int k);

// k * log(p) with the convention 0 * log(0) = 0.
double xlogy(double k, double p);

}  // namespace pdyn
