#include "pdyn/families.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "pdyn/errors.hpp"

namespace pdyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_nonneg_integer(double x) { return x >= 0 && std::floor(x) == x; }

double log_factorial(double k) { return std::lgamma(k + 1.0); }

}  // namespace

double xlogy(double k, double p) {
  if (k == 0) return 0.0;
  return k * std::log(p);
}

Family Family::normal(double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw DomainError("normal family: sigma must be positive");
  return Family(FamilyKind::Normal, sigma);
}

std::string_view Family::name() const {
  switch (kind_) {
    case FamilyKind::Bernoulli: return "bernoulli";
    case FamilyKind::Normal: return "normal";
    case FamilyKind::Poisson: return "poisson";
    case FamilyKind::Exponential: return "exponential";
  }
  return "?";
}

Interval Family::theta_domain() const {
  switch (kind_) {
    case FamilyKind::Bernoulli: return {0.0, 1.0};
    case FamilyKind::Normal: return {-kInf, kInf};
    case FamilyKind::Poisson:
    case FamilyKind::Exponential: return {0.0, kInf};
  }
  return {0.0, 0.0};
}

void Family::check_theta(double theta) const {
  Interval d = theta_domain();
  if (std::isnan(theta)) throw DomainError(std::string(name()) + ": theta is NaN");
  if (!(theta > d.lo))
    throw DomainError(std::string(name()) + ": theta = " + format_double(theta) +
                      " violates lower bound theta > " + format_double(d.lo));
  if (!(theta < d.hi))
    throw DomainError(std::string(name()) + ": theta = " + format_double(theta) +
                      " violates upper bound theta < " + format_double(d.hi));
}

double Family::eta(double theta) const {
  check_theta(theta);
  switch (kind_) {
    case FamilyKind::Bernoulli: return std::log(theta / (1.0 - theta));
    case FamilyKind::Normal: return theta;
    case FamilyKind::Poisson: return std::log(theta);
    case FamilyKind::Exponential: return theta;
  }
  return 0.0;
}

double Family::eta_inverse(double eta) const {
  switch (kind_) {
    case FamilyKind::Bernoulli: return 1.0 / (1.0 + std::exp(-eta));
    case FamilyKind::Normal: return eta;
    case FamilyKind::Poisson: return std::exp(eta);
    case FamilyKind::Exponential: return eta;
  }
  return 0.0;
}

double Family::log_partition(double eta) const {
  switch (kind_) {
    case FamilyKind::Bernoulli: return eta > 0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
    case FamilyKind::Normal: return eta * eta / (2.0 * sigma_ * sigma_);
    case FamilyKind::Poisson: return std::exp(eta);
    case FamilyKind::Exponential: return -std::log(eta);
  }
  return 0.0;
}

double Family::sufficient_statistic(double x) const {
  switch (kind_) {
    case FamilyKind::Bernoulli:
    case FamilyKind::Poisson: return x;
    case FamilyKind::Normal: return x / (sigma_ * sigma_);
    case FamilyKind::Exponential: return -x;
  }
  return 0.0;
}

double Family::log_base_measure(double x) const {
  switch (kind_) {
    case FamilyKind::Bernoulli: return 0.0;
    case FamilyKind::Normal:
      return x * x / (2.0 * sigma_ * sigma_) + 0.5 * std::log(2.0 * std::numbers::pi * sigma_ * sigma_);
    case FamilyKind::Poisson: return log_factorial(x);
    case FamilyKind::Exponential: return 0.0;
  }
  return 0.0;
}

bool Family::in_support(double x) const {
  switch (kind_) {
    case FamilyKind::Bernoulli: return x == 0.0 || x == 1.0;
    case FamilyKind::Normal: return std::isfinite(x);
    case FamilyKind::Poisson: return is_nonneg_integer(x);
    case FamilyKind::Exponential: return x >= 0.0 && std::isfinite(x);
  }
  return false;
}

double fisher_information(const Family& family, double theta) {
  family.check_theta(theta);
  switch (family.kind()) {
    case FamilyKind::Bernoulli: return 1.0 / (theta * (1.0 - theta));
    case FamilyKind::Normal: return 1.0 / (family.sigma() * family.sigma());
    case FamilyKind::Poisson: return 1.0 / theta;
    case FamilyKind::Exponential: return 1.0 / (theta * theta);
  }
  return 0.0;
}

GeometricAverage theta2_and_w(const Family& family, double theta0, double theta1) {
  family.check_theta(theta0);
  family.check_theta(theta1);
  if (theta0 == theta1) return {theta0, 1.0};
  switch (family.kind()) {
    case FamilyKind::Bernoulli: {
      double s = std::sqrt(theta0 * theta1);
      double c = std::sqrt((1.0 - theta0) * (1.0 - theta1));
      return {s / (s + c), (s + c) * (s + c)};
    }
    case FamilyKind::Normal: {
      double d = theta0 - theta1;
      return {(theta0 + theta1) / 2.0, std::exp(-d * d / (4.0 * family.sigma() * family.sigma()))};
    }
    case FamilyKind::Poisson: {
      double d = std::sqrt(theta0) - std::sqrt(theta1);
      return {std::sqrt(theta0 * theta1), std::exp(-d * d)};
    }
    case FamilyKind::Exponential: {
      double t2 = (theta0 + theta1) / 2.0;
      return {t2, theta0 * theta1 / (t2 * t2)};
    }
  }
  return {0.0, 0.0};
}

double log_density(const Family& family, double theta, double x) {
  if (family.kind() == FamilyKind::Bernoulli) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("bernoulli: theta outside [0, 1]");
  } else {
    family.check_theta(theta);
  }
  if (!family.in_support(x)) return -kInf;
  switch (family.kind()) {
    case FamilyKind::Bernoulli: return x == 1.0 ? xlogy(1, theta) : xlogy(1, 1.0 - theta);
    case FamilyKind::Normal: {
      double s = family.sigma();
      double z = (x - theta) / s;
      return -0.5 * z * z - std::log(s) - 0.5 * std::log(2.0 * std::numbers::pi);
    }
    case FamilyKind::Poisson: return xlogy(x, theta) - theta - log_factorial(x);
    case FamilyKind::Exponential: return std::log(theta) - theta * x;
  }
  return -kInf;
}

double suff_stat_log_density(const Family& family, double theta, int n, double u) {
  if (n < 1) throw DomainError("sufficient statistic density needs n >= 1");
  if (family.kind() == FamilyKind::Bernoulli) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("bernoulli: theta outside [0, 1]");
  } else {
    family.check_theta(theta);
  }
  const double nd = n;
  switch (family.kind()) {
    case FamilyKind::Bernoulli: {
      if (!is_nonneg_integer(u) || u > nd) return -kInf;
      double lp = xlogy(u, theta) + xlogy(nd - u, 1.0 - theta);
      if (std::isnan(lp)) return -kInf;
      return log_factorial(nd) - log_factorial(u) - log_factorial(nd - u) + lp;
    }
    case FamilyKind::Normal: {
      if (!std::isfinite(u)) return -kInf;
      double var = nd * family.sigma() * family.sigma();
      double d = u - nd * theta;
      return -0.5 * d * d / var - 0.5 * std::log(2.0 * std::numbers::pi * var);
    }
    case FamilyKind::Poisson: {
      if (!is_nonneg_integer(u)) return -kInf;
      double mean = nd * theta;
      return xlogy(u, mean) - mean - log_factorial(u);
    }
    case FamilyKind::Exponential: {
      if (!(u >= 0.0) || !std::isfinite(u)) return -kInf;
      if (u == 0.0) return n == 1 ? std::log(theta) : -kInf;
      return nd * std::log(theta) + (nd - 1.0) * std::log(u) - theta * u - log_factorial(nd - 1.0);
    }
  }
  return -kInf;
}

Rational bernoulli_sequence_prob(const Rational& theta, int n, int k) {
  if (theta < 0 || theta > 1) throw DomainError("bernoulli: theta outside [0, 1]");
  if (k < 0 || k > n) return Rational(0);
  Rational one_minus = 1 - theta;
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), theta.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(den.get_mpz_t(), theta.get_den_mpz_t(), static_cast<unsigned long>(k));
  Integer num2, den2;
  mpz_pow_ui(num2.get_mpz_t(), one_minus.get_num_mpz_t(), static_cast<unsigned long>(n - k));
  mpz_pow_ui(den2.get_mpz_t(), one_minus.get_den_mpz_t(), static_cast<unsigned long>(n - k));
  Rational out(num * num2, den * den2);
  out.canonicalize();
  return out;
}

Rational binomial_pmf_exact(const Rational& theta, int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational p = bernoulli_sequence_prob(theta, n, k);
  return Rational(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k))) * p;
}

}  // namespace pdyn
