#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pdyn/priors.hpp"
#include "pdyn/rational.hpp"

namespace pdyn {

// Finitely supported law with an increasing support and exact masses.
struct FiniteLaw {
  std::vector<Rational> support;
  std::vector<Rational> probabilities;

  Rational mass_at(const Rational& t) const;
};

// Merges equal support points, drops zero masses and sorts. Throws when the
// masses are negative or do not sum to one.
FiniteLaw make_law(std::vector<std::pair<Rational, Rational>> points);

// hi >=_lr lo: P_hi(t') P_lo(t) >= P_hi(t) P_lo(t') for all t' > t on the union
// of the supports.
bool lr_dominates(const FiniteLaw& hi, const FiniteLaw& lo);

// V(y) = theta0 theta1 / y + (1 - theta0)(1 - theta1) / (1 - y), y in (0, 1).
Rational v_function(const Rational& y, const Rational& theta0, const Rational& theta1);
double v_function(double y, double theta0, double theta1);

// Law of the posterior q_n^theta (a function of u_n) for a Bernoulli model
// with rational atoms. The data are drawn from Bernoulli(generator) when given
// and from the prior predictive otherwise.
FiniteLaw posterior_law(const DiscretePrior& prior, const Rational& theta, int n,
                        const std::optional<Rational>& generator);

// q_n^theta0 V(mean) for the posterior after s_n; exact when the posterior is.
Number one_step_expected_posterior(const PosteriorVector& posterior, const Number& theta0, const Number& theta1);

// theta1 q_{n+1}(k+1) + (1 - theta1) q_{n+1}(k), enumerated from the prior.
Rational one_step_enumerated(const DiscretePrior& prior, int n, int k, const Rational& theta0, const Rational& theta1);

enum class Direction { Below, Equal, Above };
std::string_view to_string(Direction d);

struct PriorCriterion {
  Rational expected;      // E_theta1[q^theta0] after one observation, by enumeration
  Rational via_v;         // pi(theta0) V(mean)
  Rational prior_weight;  // pi(theta0)
  Rational mean;          // prior mean of theta
  Direction predicted;    // from the position of the mean
  Direction observed;     // sign of expected - pi(theta0)
  bool consistent() const { return expected == via_v && predicted == observed; }
};

// One Bernoulli observation: E_theta1[q^theta0] <= pi(theta0) exactly when
// the prior mean lies between theta0 and theta1, with equality exactly when
// it equals one of them.
PriorCriterion check_prior_criterion(const DiscretePrior& prior, const Rational& theta0, const Rational& theta1);

struct SymmetryCheck {
  Rational lhs;  // pi(theta1) psi_{theta0,theta1}(n)
  Rational rhs;  // pi(theta0) psi_{theta1,theta0}(n)
  bool equal() const { return lhs == rhs; }
};
SymmetryCheck symmetry_check(const DiscretePrior& prior, const Rational& theta0, const Rational& theta1, int n);

// Seeded generator for rational Bernoulli scenarios. Atom locations are
// k/q with q <= 20 in the open unit interval; weights are positive integers
// normalised to one.
struct RandomBernoulliScenario {
  DiscretePrior prior;
  Rational theta0;  // an atom
  Rational theta1;  // an atom
};
RandomBernoulliScenario random_bernoulli_scenario(std::mt19937_64& rng, int max_atoms);

// Uniform integer in [lo, hi] from a 64-bit engine; portable across standard
// libraries, unlike std::uniform_int_distribution.
std::int64_t draw_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

// A three-atom prior {alpha, beta, gamma}, n and atoms for which
// L_gamma(q^alpha) >_lr L(q^alpha) strictly: the reverse of the two-point
// ordering L(q^alpha) >=_lr L_gamma(q^alpha).
struct ReversalWitness {
  DiscretePrior prior;
  Rational alpha;
  Rational gamma;
  int n;
  FiniteLaw under_gamma;
  FiniteLaw under_marginal;
};
std::optional<ReversalWitness> find_lr_reversal(std::uint64_t seed, int max_tries = 20000);

}  // namespace pdyn
