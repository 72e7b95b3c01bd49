#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pdyn/families.hpp"
#include "pdyn/rational.hpp"

namespace pdyn {

struct Atom {
  Number theta;
  Rational weight;
};

// Finitely supported prior. Weights are exact, strictly positive, and sum
// exactly to one; atom locations are distinct.
class DiscretePrior {
 public:
  explicit DiscretePrior(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const Number& theta(std::size_t i) const { return atoms_[i].theta; }
  const Rational& weight(std::size_t i) const { return atoms_[i].weight; }

  std::optional<std::size_t> index_of(const Number& theta) const;
  // True when every atom location is an exact rational.
  bool is_exact() const;
  // Bernoulli atoms may sit on the closed interval [0, 1]; other families
  // require the open parameter domain.
  void check_family(const Family& family) const;

 private:
  std::vector<Atom> atoms_;
};

struct Uniform01 {};
struct BetaPrior {
  double a;
  double b;
};
struct StdNormal {};
struct ExpPrior {
  double lambda = 1.0;
};

using NamedPrior = std::variant<Uniform01, BetaPrior, StdNormal, ExpPrior>;
using Prior = std::variant<DiscretePrior, NamedPrior>;

Interval named_prior_support(const NamedPrior& prior);
double named_prior_log_density(const NamedPrior& prior, double theta);
std::string describe(const NamedPrior& prior);
std::string describe(const Prior& prior);
void validate(const NamedPrior& prior);

enum class Representation { Exact, Float };
std::string_view to_string(Representation r);

// Posterior over the atoms of a discrete prior, conditioned on u_n = u.
struct PosteriorVector {
  std::vector<Number> thetas;
  std::vector<double> weights;
  std::vector<Rational> exact_weights;  // populated iff representation == Exact
  Representation representation = Representation::Float;
  int n = 0;
  Number u;

  std::size_t size() const { return thetas.size(); }
  std::optional<std::size_t> index_of(const Number& theta) const;
};

PosteriorVector prior_as_posterior(const DiscretePrior& prior);

// Bayes rule over atoms using the law of u_n. n == 0 returns the prior.
// Exact when the family is Bernoulli, atoms are rational and u is an integer.
PosteriorVector posterior_given_suffstat(const Family& family, const DiscretePrior& prior, int n,
                                         const Number& u);

// Posterior mean of theta; exact when the posterior is exact.
Number mean_parameter(const PosteriorVector& posterior);

// log of the prior-predictive mass/density of u_n. Named priors are limited
// to the conjugate pairings with closed forms:
//   Bernoulli + Uniform01 / Beta, Normal + StdNormal, Exponential + ExpPrior.
double marginal_suffstat_logpmf(const Family& family, const Prior& prior, int n, double u);

bool has_closed_marginal(const Family& family, const NamedPrior& prior);

// Exact P(u_n = k) for a Bernoulli model with a rational discrete prior.
Rational marginal_suffstat_pmf_exact(const DiscretePrior& prior, int n, int k);

// Numerically stable log(sum(exp(xs))); -inf for an empty or all -inf input.
double log_sum_exp(const std::vector<double>& xs);

}  // namespace pdyn
