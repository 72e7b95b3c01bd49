#include "pdyn/orders.hpp"

#include <algorithm>
#include <map>

#include "pdyn/errors.hpp"
#include "pdyn/psi.hpp"

namespace pdyn {

namespace {

Rational exact_theta(const DiscretePrior& prior, std::size_t i) { return prior.theta(i).exact(); }

std::size_t require_atom(const DiscretePrior& prior, const Rational& theta) {
  auto idx = prior.index_of(Number(theta));
  if (!idx) throw DomainError("theta = " + pdyn::to_string(theta) + " is not an atom of the prior");
  return *idx;
}

void require_exact(const DiscretePrior& prior) {
  if (!prior.is_exact()) throw DomainError("rational prior atoms required");
  prior.check_family(Family::bernoulli());
}

// Posterior weight of atom i after k ones in n draws.
Rational posterior_weight(const DiscretePrior& prior, std::size_t i, int n, int k) {
  Rational total = 0;
  Rational mine = 0;
  for (std::size_t j = 0; j < prior.size(); ++j) {
    Rational v = prior.weight(j) * bernoulli_sequence_prob(exact_theta(prior, j), n, k);
    if (j == i) mine = v;
    total += v;
  }
  if (total == 0) throw ImpossibleObservation();
  return mine / total;
}

}  // namespace

Rational FiniteLaw::mass_at(const Rational& t) const {
  auto it = std::lower_bound(support.begin(), support.end(), t);
  if (it == support.end() || *it != t) return 0;
  return probabilities[static_cast<std::size_t>(it - support.begin())];
}

FiniteLaw make_law(std::vector<std::pair<Rational, Rational>> points) {
  std::map<Rational, Rational> merged;
  Rational total = 0;
  for (auto& [t, p] : points) {
    if (sgn(p) < 0) throw DomainError("finite law: negative mass");
    total += p;
    if (sgn(p) == 0) continue;
    merged[t] += p;
  }
  if (total != 1) throw DomainError("finite law: masses sum to " + pdyn::to_string(total));
  FiniteLaw law;
  for (auto& [t, p] : merged) {
    law.support.push_back(t);
    law.probabilities.push_back(p);
  }
  return law;
}

bool lr_dominates(const FiniteLaw& hi, const FiniteLaw& lo) {
  std::vector<Rational> grid = hi.support;
  grid.insert(grid.end(), lo.support.begin(), lo.support.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<Rational> ph;
  std::vector<Rational> pl;
  for (const auto& t : grid) {
    ph.push_back(hi.mass_at(t));
    pl.push_back(lo.mass_at(t));
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j)
      if (ph[j] * pl[i] < ph[i] * pl[j]) return false;
  return true;
}

Rational v_function(const Rational& y, const Rational& theta0, const Rational& theta1) {
  if (y <= 0 || y >= 1) throw DomainError("V(y) needs y in (0, 1), got " + pdyn::to_string(y));
  return theta0 * theta1 / y + (1 - theta0) * (1 - theta1) / (1 - y);
}

double v_function(double y, double theta0, double theta1) {
  if (!(y > 0.0 && y < 1.0)) throw DomainError("V(y) needs y in (0, 1)");
  return theta0 * theta1 / y + (1.0 - theta0) * (1.0 - theta1) / (1.0 - y);
}

FiniteLaw posterior_law(const DiscretePrior& prior, const Rational& theta, int n,
                        const std::optional<Rational>& generator) {
  require_exact(prior);
  if (n < 0) throw DomainError("n must be non-negative");
  const std::size_t i = require_atom(prior, theta);
  std::vector<std::pair<Rational, Rational>> points;
  for (int k = 0; k <= n; ++k) {
    Rational p = generator ? binomial_pmf_exact(*generator, n, k) : marginal_suffstat_pmf_exact(prior, n, k);
    if (sgn(p) == 0) continue;
    points.emplace_back(posterior_weight(prior, i, n, k), p);
  }
  return make_law(std::move(points));
}

Number one_step_expected_posterior(const PosteriorVector& posterior, const Number& theta0, const Number& theta1) {
  auto idx = posterior.index_of(theta0);
  if (!idx) throw DomainError("theta0 = " + theta0.to_string() + " is not an atom of the posterior");
  Number mean = mean_parameter(posterior);
  if (posterior.representation == Representation::Exact && mean.is_exact() && theta0.is_exact() &&
      theta1.is_exact())
    return Number(posterior.exact_weights[*idx] * v_function(mean.exact(), theta0.exact(), theta1.exact()));
  return Number(posterior.weights[*idx] * v_function(mean.to_double(), theta0.to_double(), theta1.to_double()));
}

Rational one_step_enumerated(const DiscretePrior& prior, int n, int k, const Rational& theta0,
                             const Rational& theta1) {
  require_exact(prior);
  const std::size_t i = require_atom(prior, theta0);
  Rational out = 0;
  if (theta1 != 0) out += theta1 * posterior_weight(prior, i, n + 1, k + 1);
  if (theta1 != 1) out += (1 - theta1) * posterior_weight(prior, i, n + 1, k);
  return out;
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Below:
      return "below";
    case Direction::Equal:
      return "equal";
    case Direction::Above:
      return "above";
  }
  return "";
}

PriorCriterion check_prior_criterion(const DiscretePrior& prior, const Rational& theta0, const Rational& theta1) {
  require_exact(prior);
  const std::size_t i = require_atom(prior, theta0);
  PriorCriterion c;
  c.prior_weight = prior.weight(i);
  c.mean = 0;
  for (std::size_t j = 0; j < prior.size(); ++j) c.mean += exact_theta(prior, j) * prior.weight(j);
  c.expected = one_step_enumerated(prior, 0, 0, theta0, theta1);
  c.via_v = c.prior_weight * v_function(c.mean, theta0, theta1);
  const Rational lo = std::min(theta0, theta1);
  const Rational hi = std::max(theta0, theta1);
  if (c.mean == theta0 || c.mean == theta1)
    c.predicted = Direction::Equal;
  else if (c.mean > lo && c.mean < hi)
    c.predicted = Direction::Below;
  else
    c.predicted = Direction::Above;
  int s = cmp(c.expected, c.prior_weight);
  c.observed = s < 0 ? Direction::Below : (s == 0 ? Direction::Equal : Direction::Above);
  return c;
}

SymmetryCheck symmetry_check(const DiscretePrior& prior, const Rational& theta0, const Rational& theta1, int n) {
  require_exact(prior);
  const std::size_t i0 = require_atom(prior, theta0);
  const std::size_t i1 = require_atom(prior, theta1);
  SymmetryCheck s;
  s.lhs = prior.weight(i1) * psi_bernoulli_finite_exact(prior, theta0, theta1, n);
  s.rhs = prior.weight(i0) * psi_bernoulli_finite_exact(prior, theta1, theta0, n);
  return s;
}

std::int64_t draw_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return lo + static_cast<std::int64_t>(x % span);
}

RandomBernoulliScenario random_bernoulli_scenario(std::mt19937_64& rng, int max_atoms) {
  if (max_atoms < 1) throw DomainError("max_atoms must be positive");
  const int count = static_cast<int>(draw_int(rng, 1, max_atoms));
  std::vector<Rational> thetas;
  while (static_cast<int>(thetas.size()) < count) {
    std::int64_t q = draw_int(rng, 2, 20);
    Rational t(draw_int(rng, 1, q - 1), q);
    t.canonicalize();
    if (std::find(thetas.begin(), thetas.end(), t) == thetas.end()) thetas.push_back(t);
  }
  std::vector<std::int64_t> raw;
  std::int64_t total = 0;
  for (int i = 0; i < count; ++i) {
    raw.push_back(draw_int(rng, 1, 50));
    total += raw.back();
  }
  std::vector<Atom> atoms;
  for (int i = 0; i < count; ++i) atoms.push_back({Number(thetas[static_cast<std::size_t>(i)]), Rational(raw[static_cast<std::size_t>(i)], total)});
  Rational t0 = thetas[static_cast<std::size_t>(draw_int(rng, 0, count - 1))];
  Rational t1 = thetas[static_cast<std::size_t>(draw_int(rng, 0, count - 1))];
  return {DiscretePrior(std::move(atoms)), t0, t1};
}

std::optional<ReversalWitness> find_lr_reversal(std::uint64_t seed, int max_tries) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    RandomBernoulliScenario s = random_bernoulli_scenario(rng, 3);
    if (s.prior.size() != 3) continue;
    const int n = static_cast<int>(draw_int(rng, 1, 4));
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t g = 0; g < 3; ++g) {
        if (a == g) continue;
        Rational alpha = s.prior.theta(a).exact();
        Rational gamma = s.prior.theta(g).exact();
        FiniteLaw under_gamma = posterior_law(s.prior, alpha, n, gamma);
        FiniteLaw under_marginal = posterior_law(s.prior, alpha, n, std::nullopt);
        if (lr_dominates(under_gamma, under_marginal) && !lr_dominates(under_marginal, under_gamma))
          return ReversalWitness{s.prior, alpha, gamma, n, under_gamma, under_marginal};
      }
    }
  }
  return std::nullopt;
}

}  // namespace pdyn
