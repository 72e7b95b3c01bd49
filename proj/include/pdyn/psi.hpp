#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdyn/families.hpp"
#include "pdyn/priors.hpp"
#include "pdyn/quadrature.hpp"
#include "pdyn/rational.hpp"

namespace pdyn {

enum class PsiMethod {
  ExactRational,
  LogSpaceSum,  // floating-point evaluation of the finite-prior sum
  ClosedFormNormal,
  ClosedFormExpBessel,
  UniformPriorLegendre,
  Quadrature,
  BruteForce,
};
std::string_view to_string(PsiMethod method);

// psi(n) for n = first_n .. first_n + size() - 1. first_n is 1 unless psi(0)
// was requested explicitly.
struct PsiSequence {
  PsiMethod method = PsiMethod::LogSpaceSum;
  Representation representation = Representation::Float;
  int first_n = 1;
  std::vector<double> values;
  std::vector<double> log_values;
  std::vector<Rational> exact;  // populated iff representation == Exact
  std::string scenario;

  std::size_t size() const { return log_values.size(); }
  int last_n() const { return first_n + static_cast<int>(size()) - 1; }
  bool is_exact() const { return representation == Representation::Exact; }
  double value(int n) const { return values.at(static_cast<std::size_t>(n - first_n)); }
  double log_value(int n) const { return log_values.at(static_cast<std::size_t>(n - first_n)); }
  const Rational& exact_value(int n) const { return exact.at(static_cast<std::size_t>(n - first_n)); }
};

// Builds a float sequence from log values.
PsiSequence psi_from_logs(PsiMethod method, std::vector<double> log_values, int first_n = 1);
// Builds an exact sequence; floats are derived from the rationals.
PsiSequence psi_from_exact(PsiMethod method, std::vector<Rational> values, int first_n = 1);

struct PsiOptions {
  Representation representation = Representation::Exact;
  bool include_zero = false;  // prepend psi(0) = pi(theta0)
};

// Bernoulli observations, finitely supported prior, theta0 an atom. Exact mode
// needs rational atoms and a rational theta1; theta1 may lie in [0, 1].
PsiSequence psi_bernoulli_finite(const DiscretePrior& prior, const Number& theta0, const Number& theta1, int horizon,
                                 const PsiOptions& options = {});

// Single exact value, same formula.
Rational psi_bernoulli_finite_exact(const DiscretePrior& prior, const Rational& theta0, const Rational& theta1, int n);

// Bernoulli observations, uniform prior on (0, 1).
PsiSequence psi_bernoulli_uniform(double theta0, double theta1, int horizon);
// Exact diagonal values psi_{t,t}(n), n = 1..horizon.
PsiSequence psi_bernoulli_uniform_exact(const Rational& theta, int horizon);

// Normal observations with fixed sigma, standard normal prior.
PsiSequence psi_normal(double theta0, double theta1, double sigma, int horizon);
double log_psi_normal(double theta0, double theta1, double sigma, double n);

// Exponential observations with rate theta, Exp(lambda) prior.
PsiSequence psi_exponential(double theta0, double theta1, int horizon, double lambda = 1.0);

struct PsiQuadratureOptions {
  double abs_tol = 1e-10;
};

// psi(n) by summation (discrete u_n) or adaptive quadrature (continuous u_n)
// over the sufficient statistic. The prior-predictive density uses its closed
// form where one exists and an inner quadrature over theta otherwise.
QuadratureResult psi_quadrature(const Family& family, const Prior& prior, double theta0, double theta1, int n,
                                const PsiQuadratureOptions& options = {});
PsiSequence psi_quadrature_sequence(const Family& family, const Prior& prior, double theta0, double theta1,
                                    int horizon, const PsiQuadratureOptions& options = {});

// Largest n accepted by psi_bruteforce.
inline constexpr int kBruteForceMaxN = 14;

// Sum over all 2^n raw Bernoulli sequences of P_theta1(s) q^theta0(s),
// conditioning on the full sequence. Independent of the sufficient statistic.
Rational psi_bruteforce(const DiscretePrior& prior, const Rational& theta0, const Rational& theta1, int n);

// pi(theta0), the n = 0 value.
Rational psi_zero(const DiscretePrior& prior, const Number& theta0);

}  // namespace pdyn
