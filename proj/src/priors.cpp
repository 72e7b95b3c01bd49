#include "pdyn/priors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pdyn/errors.hpp"

namespace pdyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

bool is_nonneg_integer(double x) { return x >= 0 && std::floor(x) == x; }

}  // namespace

double log_sum_exp(const std::vector<double>& xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (m == -kInf) return -kInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

DiscretePrior::DiscretePrior(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("discrete prior needs at least one atom");
  Rational total = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    atoms_[i].weight.canonicalize();
    if (sgn(atoms_[i].weight) <= 0) throw DomainError("discrete prior: atom weights must be positive");
    total += atoms_[i].weight;
    for (std::size_t j = 0; j < i; ++j)
      if (atoms_[i].theta == atoms_[j].theta)
        throw DomainError("discrete prior: duplicate atom at theta = " + atoms_[i].theta.to_string());
  }
  if (total != 1) throw DomainError("discrete prior: weights sum to " + pdyn::to_string(total) + ", not 1");
}

std::optional<std::size_t> DiscretePrior::index_of(const Number& theta) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].theta == theta) return i;
  return std::nullopt;
}

bool DiscretePrior::is_exact() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.theta.is_exact(); });
}

void DiscretePrior::check_family(const Family& family) const {
  for (const auto& atom : atoms_) {
    double t = atom.theta.to_double();
    if (family.kind() == FamilyKind::Bernoulli) {
      if (!(t >= 0.0 && t <= 1.0))
        throw DomainError("bernoulli prior atom " + atom.theta.to_string() + " outside [0, 1]");
    } else {
      family.check_theta(t);
    }
  }
}

Interval named_prior_support(const NamedPrior& prior) {
  return std::visit(overloaded{
                        [](const Uniform01&) { return Interval{0.0, 1.0}; },
                        [](const BetaPrior&) { return Interval{0.0, 1.0}; },
                        [](const StdNormal&) { return Interval{-kInf, kInf}; },
                        [](const ExpPrior&) { return Interval{0.0, kInf}; },
                    },
                    prior);
}

void validate(const NamedPrior& prior) {
  if (auto* b = std::get_if<BetaPrior>(&prior); b && !(b->a > 0 && b->b > 0))
    throw DomainError("beta prior: a and b must be positive");
  if (auto* e = std::get_if<ExpPrior>(&prior); e && !(e->lambda > 0))
    throw DomainError("exponential prior: lambda must be positive");
}

double named_prior_log_density(const NamedPrior& prior, double theta) {
  Interval s = named_prior_support(prior);
  if (!s.contains(theta)) return -kInf;
  return std::visit(overloaded{
                        [](const Uniform01&) { return 0.0; },
                        [&](const BetaPrior& b) {
                          return (b.a - 1.0) * std::log(theta) + (b.b - 1.0) * std::log1p(-theta) - log_beta(b.a, b.b);
                        },
                        [&](const StdNormal&) { return -0.5 * theta * theta - 0.5 * std::log(2.0 * std::numbers::pi); },
                        [&](const ExpPrior& e) { return std::log(e.lambda) - e.lambda * theta; },
                    },
                    prior);
}

std::string describe(const NamedPrior& prior) {
  return std::visit(overloaded{
                        [](const Uniform01&) { return std::string("Uniform(0,1)"); },
                        [](const BetaPrior& b) { return "Beta(" + format_double(b.a) + "," + format_double(b.b) + ")"; },
                        [](const StdNormal&) { return std::string("N(0,1)"); },
                        [](const ExpPrior& e) { return "Exp(" + format_double(e.lambda) + ")"; },
                    },
                    prior);
}

std::string describe(const Prior& prior) {
  if (const auto* named = std::get_if<NamedPrior>(&prior)) return describe(*named);
  const auto& d = std::get<DiscretePrior>(prior);
  std::string out = "atoms{";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ", ";
    out += d.theta(i).to_string() + ": " + pdyn::to_string(d.weight(i));
  }
  return out + "}";
}

std::string_view to_string(Representation r) { return r == Representation::Exact ? "exact" : "float"; }

std::optional<std::size_t> PosteriorVector::index_of(const Number& theta) const {
  for (std::size_t i = 0; i < thetas.size(); ++i)
    if (thetas[i] == theta) return i;
  return std::nullopt;
}

PosteriorVector prior_as_posterior(const DiscretePrior& prior) {
  PosteriorVector out;
  out.n = 0;
  out.u = Number(Rational(0));
  out.representation = Representation::Exact;
  for (const auto& atom : prior.atoms()) {
    out.thetas.push_back(atom.theta);
    out.exact_weights.push_back(atom.weight);
    out.weights.push_back(atom.weight.get_d());
  }
  return out;
}

PosteriorVector posterior_given_suffstat(const Family& family, const DiscretePrior& prior, int n,
                                         const Number& u) {
  if (n < 0) throw DomainError("posterior: n must be non-negative");
  prior.check_family(family);
  if (n == 0) return prior_as_posterior(prior);

  PosteriorVector out;
  out.n = n;
  out.u = u;
  for (const auto& atom : prior.atoms()) out.thetas.push_back(atom.theta);

  const double ud = u.to_double();
  const bool exact = family.kind() == FamilyKind::Bernoulli && prior.is_exact() && u.is_exact() &&
                     u.exact().get_den() == 1;
  if (exact) {
    if (!is_nonneg_integer(ud) || ud > n) throw ImpossibleObservation();
    const int k = static_cast<int>(ud);
    Rational total = 0;
    std::vector<Rational> unnormalized;
    for (const auto& atom : prior.atoms()) {
      unnormalized.push_back(atom.weight * bernoulli_sequence_prob(atom.theta.exact(), n, k));
      total += unnormalized.back();
    }
    if (total == 0) throw ImpossibleObservation();
    out.representation = Representation::Exact;
    for (auto& v : unnormalized) {
      Rational q = v / total;
      out.weights.push_back(q.get_d());
      out.exact_weights.push_back(std::move(q));
    }
    return out;
  }

  std::vector<double> logs;
  for (const auto& atom : prior.atoms())
    logs.push_back(log_rational(atom.weight) + suff_stat_log_density(family, atom.theta.to_double(), n, ud));
  double norm = log_sum_exp(logs);
  if (norm == -kInf) throw ImpossibleObservation();
  out.representation = Representation::Float;
  for (double l : logs) out.weights.push_back(std::exp(l - norm));
  return out;
}

Number mean_parameter(const PosteriorVector& posterior) {
  if (posterior.representation == Representation::Exact) {
    bool thetas_exact = std::all_of(posterior.thetas.begin(), posterior.thetas.end(),
                                    [](const Number& t) { return t.is_exact(); });
    if (thetas_exact) {
      Rational m = 0;
      for (std::size_t i = 0; i < posterior.size(); ++i) m += posterior.thetas[i].exact() * posterior.exact_weights[i];
      return Number(m);
    }
  }
  double m = 0.0;
  for (std::size_t i = 0; i < posterior.size(); ++i) m += posterior.thetas[i].to_double() * posterior.weights[i];
  return Number(m);
}

bool has_closed_marginal(const Family& family, const NamedPrior& prior) {
  switch (family.kind()) {
    case FamilyKind::Bernoulli:
      return std::holds_alternative<Uniform01>(prior) || std::holds_alternative<BetaPrior>(prior);
    case FamilyKind::Normal: return std::holds_alternative<StdNormal>(prior);
    case FamilyKind::Exponential: return std::holds_alternative<ExpPrior>(prior);
    case FamilyKind::Poisson: return false;
  }
  return false;
}

double marginal_suffstat_logpmf(const Family& family, const Prior& prior, int n, double u) {
  if (n < 1) throw DomainError("marginal: n must be >= 1");
  if (const auto* discrete = std::get_if<DiscretePrior>(&prior)) {
    discrete->check_family(family);
    std::vector<double> logs;
    for (const auto& atom : discrete->atoms())
      logs.push_back(log_rational(atom.weight) + suff_stat_log_density(family, atom.theta.to_double(), n, u));
    return log_sum_exp(logs);
  }
  const auto& named = std::get<NamedPrior>(prior);
  validate(named);
  if (!has_closed_marginal(family, named))
    throw UnsupportedError("unsupported conjugacy: " + std::string(family.name()) + " with " + describe(named) +
                           " prior has no closed-form marginal");
  const double nd = n;
  switch (family.kind()) {
    case FamilyKind::Bernoulli: {
      if (!is_nonneg_integer(u) || u > nd) return -kInf;
      if (std::holds_alternative<Uniform01>(named)) return -std::log(nd + 1.0);
      const auto& b = std::get<BetaPrior>(named);
      double log_choose = std::lgamma(nd + 1.0) - std::lgamma(u + 1.0) - std::lgamma(nd - u + 1.0);
      return log_choose + log_beta(u + b.a, nd - u + b.b) - log_beta(b.a, b.b);
    }
    case FamilyKind::Normal: {
      // u_n = n*theta + noise, theta ~ N(0,1): N(0, n^2 + n sigma^2).
      double var = nd * nd + nd * family.sigma() * family.sigma();
      return -0.5 * u * u / var - 0.5 * std::log(2.0 * std::numbers::pi * var);
    }
    case FamilyKind::Exponential: {
      if (!(u > 0.0)) return -kInf;
      // lambda * n * u^(n-1) / (u + lambda)^(n+1)
      double lambda = std::get<ExpPrior>(named).lambda;
      return std::log(lambda) + std::log(nd) + (nd - 1.0) * std::log(u) - (nd + 1.0) * std::log(u + lambda);
    }
    case FamilyKind::Poisson: break;
  }
  return -kInf;
}

Rational marginal_suffstat_pmf_exact(const DiscretePrior& prior, int n, int k) {
  if (!prior.is_exact()) throw DomainError("exact marginal needs rational atoms");
  Rational total = 0;
  for (const auto& atom : prior.atoms()) total += atom.weight * binomial_pmf_exact(atom.theta.exact(), n, k);
  return total;
}

}  // namespace pdyn
