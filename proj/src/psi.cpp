#include "pdyn/psi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pdyn/errors.hpp"
#include "pdyn/parallel.hpp"
#include "pdyn/specialfn.hpp"

namespace pdyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// k * log_value with 0 * (-inf) = 0.
double times_log(int k, double log_value) { return k == 0 ? 0.0 : k * log_value; }

double log_binomial(int n, int k) { return log_factorial(n) - log_factorial(k) - log_factorial(n - k); }

// log(sum(exp(xs))) with Neumaier-compensated accumulation of the scaled terms.
double log_sum_exp_compensated(const std::vector<double>& xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (m == -kInf) return -kInf;
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    double t = std::exp(x - m);
    double s = sum + t;
    comp += std::fabs(sum) >= std::fabs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  return m + std::log(sum + comp);
}

std::size_t atom_index(const DiscretePrior& prior, const Number& theta0) {
  auto idx = prior.index_of(theta0);
  if (!idx) throw DomainError("theta0 = " + theta0.to_string() + " is not an atom of the prior");
  return *idx;
}

Integer lcm_of_denominators(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

Integer as_integer(const Rational& r, const Integer& scale) {
  Rational scaled = r * Rational(scale);
  scaled.canonicalize();
  return scaled.get_num();
}

// Fraction with an unreduced denominator; summed pairwise so that operand
// sizes stay balanced.
struct Fraction {
  Integer num;
  Integer den;
};

Fraction tree_sum(std::vector<Fraction>& parts) {
  if (parts.empty()) return {0, 1};
  while (parts.size() > 1) {
    std::size_t half = parts.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
      Fraction& a = parts[2 * i];
      Fraction& b = parts[2 * i + 1];
      Fraction c;
      if (a.den == b.den) {
        c.num = a.num + b.num;
        c.den = a.den;
      } else {
        c.num = a.num * b.den + b.num * a.den;
        c.den = a.den * b.den;
      }
      parts[i] = std::move(c);
    }
    if (parts.size() % 2 == 1) parts[half] = std::move(parts.back());
    parts.resize(half + parts.size() % 2);
  }
  return std::move(parts.front());
}

// Integer data of a rational Bernoulli scenario over a common denominator d.
struct IntegerScenario {
  Integer d;
  std::vector<Integer> a;  // theta_j * d
  std::vector<Integer> c;  // pi_j * e
  Integer e;
  Integer b;  // theta1 * d
  std::size_t i0;

  IntegerScenario(const DiscretePrior& prior, const Rational& theta1, std::size_t index0) : i0(index0) {
    std::vector<Rational> thetas;
    std::vector<Rational> weights;
    for (const auto& atom : prior.atoms()) {
      thetas.push_back(atom.theta.exact());
      weights.push_back(atom.weight);
    }
    thetas.push_back(theta1);
    d = lcm_of_denominators(thetas);
    e = lcm_of_denominators(weights);
    for (std::size_t j = 0; j < prior.size(); ++j) {
      a.push_back(as_integer(thetas[j], d));
      c.push_back(as_integer(weights[j], e));
    }
    b = as_integer(theta1, d);
  }
};

struct PowerTable {
  std::vector<Integer> pow;

  PowerTable(const Integer& base, int max_e) : pow(static_cast<std::size_t>(max_e) + 1) {
    pow[0] = 1;
    for (std::size_t k = 1; k < pow.size(); ++k) pow[k] = pow[k - 1] * base;
  }
  const Integer& operator[](int k) const { return pow[static_cast<std::size_t>(k)]; }
};

Rational exact_psi_term_sum(const IntegerScenario& s, const std::vector<PowerTable>& pa,
                            const std::vector<PowerTable>& pda, const PowerTable& x_hit, const PowerTable& x_miss,
                            const PowerTable& d_pow, int n) {
  std::vector<Fraction> parts;
  parts.reserve(static_cast<std::size_t>(n) + 1);
  Integer binom = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom *= n - k + 1;
      binom /= k;
    }
    Integer x = x_hit[k] * x_miss[n - k];
    if (x == 0) continue;  // theta0 or theta1 cannot produce k ones
    Integer m = 0;
    for (std::size_t j = 0; j < s.a.size(); ++j) m += s.c[j] * pa[j][k] * pda[j][n - k];
    parts.push_back({binom * x, std::move(m)});
  }
  Fraction total = tree_sum(parts);
  Rational out(total.num * s.c[s.i0], total.den * d_pow[n]);
  out.canonicalize();
  return out;
}

void check_horizon(int horizon) {
  if (horizon < 1) throw DomainError("horizon must be at least 1");
}

}  // namespace

std::string_view to_string(PsiMethod method) {
  switch (method) {
    case PsiMethod::ExactRational:
      return "exact_rational";
    case PsiMethod::LogSpaceSum:
      return "log_space_sum";
    case PsiMethod::ClosedFormNormal:
      return "closed_form_normal";
    case PsiMethod::ClosedFormExpBessel:
      return "closed_form_exp_bessel";
    case PsiMethod::UniformPriorLegendre:
      return "uniform_prior_legendre";
    case PsiMethod::Quadrature:
      return "quadrature";
    case PsiMethod::BruteForce:
      return "brute_force";
  }
  return "unknown";
}

PsiSequence psi_from_logs(PsiMethod method, std::vector<double> log_values, int first_n) {
  PsiSequence seq;
  seq.method = method;
  seq.representation = Representation::Float;
  seq.first_n = first_n;
  seq.values.reserve(log_values.size());
  for (double l : log_values) seq.values.push_back(std::exp(l));
  seq.log_values = std::move(log_values);
  return seq;
}

PsiSequence psi_from_exact(PsiMethod method, std::vector<Rational> values, int first_n) {
  PsiSequence seq;
  seq.method = method;
  seq.representation = Representation::Exact;
  seq.first_n = first_n;
  for (const auto& v : values) {
    double l = sgn(v) > 0 ? log_rational(v) : -kInf;
    seq.log_values.push_back(l);
    seq.values.push_back(std::exp(l));
  }
  seq.exact = std::move(values);
  return seq;
}

Rational psi_zero(const DiscretePrior& prior, const Number& theta0) { return prior.weight(atom_index(prior, theta0)); }

PsiSequence psi_bernoulli_finite(const DiscretePrior& prior, const Number& theta0, const Number& theta1, int horizon,
                                 const PsiOptions& options) {
  check_horizon(horizon);
  prior.check_family(Family::bernoulli());
  const std::size_t i0 = atom_index(prior, theta0);
  const double t1 = theta1.to_double();
  if (!(t1 >= 0.0 && t1 <= 1.0)) throw DomainError("theta1 = " + theta1.to_string() + " outside [0, 1]");
  const int first = options.include_zero ? 0 : 1;
  const std::size_t count = static_cast<std::size_t>(horizon - first + 1);

  if (options.representation == Representation::Exact) {
    if (!prior.is_exact() || !theta1.is_exact())
      throw DomainError("exact mode needs rational prior atoms and a rational theta1");
    IntegerScenario s(prior, theta1.exact(), i0);
    std::vector<PowerTable> pa;
    std::vector<PowerTable> pda;
    for (const auto& a : s.a) {
      pa.emplace_back(a, horizon);
      pda.emplace_back(s.d - a, horizon);
    }
    PowerTable x_hit(s.a[i0] * s.b, horizon);
    PowerTable x_miss((s.d - s.a[i0]) * (s.d - s.b), horizon);
    PowerTable d_pow(s.d, horizon);
    std::vector<Rational> values(count);
    parallel_for(count, [&](std::size_t i) {
      int n = first + static_cast<int>(i);
      values[i] = n == 0 ? prior.weight(i0) : exact_psi_term_sum(s, pa, pda, x_hit, x_miss, d_pow, n);
    });
    return psi_from_exact(PsiMethod::ExactRational, std::move(values), first);
  }

  const double t0 = theta0.to_double();
  std::vector<double> log_w;
  std::vector<double> log_t;
  std::vector<double> log_1mt;
  for (std::size_t j = 0; j < prior.size(); ++j) {
    double t = prior.theta(j).to_double();
    log_w.push_back(log_rational(prior.weight(j)));
    log_t.push_back(std::log(t));
    log_1mt.push_back(std::log1p(-t));
  }
  const double log_hit = std::log(t0) + std::log(t1);
  const double log_miss = std::log1p(-t0) + std::log1p(-t1);
  std::vector<double> logs(count);
  parallel_for(count, [&](std::size_t i) {
    int n = first + static_cast<int>(i);
    if (n == 0) {
      logs[i] = log_w[i0];
      return;
    }
    std::vector<double> terms;
    std::vector<double> mix(prior.size());
    terms.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
      double num = times_log(k, log_hit) + times_log(n - k, log_miss);
      if (num == -kInf) continue;
      for (std::size_t j = 0; j < prior.size(); ++j) mix[j] = log_w[j] + times_log(k, log_t[j]) + times_log(n - k, log_1mt[j]);
      terms.push_back(log_binomial(n, k) + num - log_sum_exp(mix));
    }
    logs[i] = log_w[i0] + log_sum_exp_compensated(terms);
  });
  return psi_from_logs(PsiMethod::LogSpaceSum, std::move(logs), first);
}

Rational psi_bernoulli_finite_exact(const DiscretePrior& prior, const Rational& theta0, const Rational& theta1, int n) {
  if (n < 0) throw DomainError("n must be non-negative");
  PsiOptions options;
  options.include_zero = n == 0;
  if (n == 0) return psi_zero(prior, Number(theta0));
  PsiSequence seq = psi_bernoulli_finite(prior, Number(theta0), Number(theta1), n, options);
  return seq.exact.back();
}

PsiSequence psi_bernoulli_uniform(double theta0, double theta1, int horizon) {
  check_horizon(horizon);
  Family f = Family::bernoulli();
  f.check_theta(theta0);
  f.check_theta(theta1);
  GeometricAverage g = theta2_and_w(f, theta0, theta1);
  const double t = g.theta2;
  std::vector<double> logs = s_n_log(t * t, (1.0 - t) * (1.0 - t), horizon);
  const double log_w = std::log(g.w);
  for (int n = 1; n <= horizon; ++n) logs[static_cast<std::size_t>(n - 1)] += n * log_w;
  return psi_from_logs(PsiMethod::UniformPriorLegendre, std::move(logs));
}

PsiSequence psi_bernoulli_uniform_exact(const Rational& theta, int horizon) {
  check_horizon(horizon);
  if (!(theta > 0 && theta < 1)) throw DomainError("theta must lie in (0, 1)");
  Rational one_minus = 1 - theta;
  return psi_from_exact(PsiMethod::UniformPriorLegendre, s_n_exact(theta * theta, one_minus * one_minus, horizon));
}

double log_psi_normal(double theta0, double theta1, double sigma, double n) {
  if (!(sigma > 0)) throw DomainError("sigma must be positive");
  const double s2 = sigma * sigma;
  const double t = 0.5 * (theta0 + theta1);
  const double diag = std::log(n + s2) - std::log(sigma) - 0.5 * std::log(2.0 * std::numbers::pi * (2.0 * n + s2)) -
                      t * t * s2 / (4.0 * n + 2.0 * s2);
  const double d = theta0 - theta1;
  return diag + 0.5 * (t * t - theta0 * theta0) - n * d * d / (4.0 * s2);
}

PsiSequence psi_normal(double theta0, double theta1, double sigma, int horizon) {
  check_horizon(horizon);
  if (!(sigma > 0)) throw DomainError("sigma must be positive");
  if (!std::isfinite(theta0) || !std::isfinite(theta1)) throw DomainError("theta must be finite");
  std::vector<double> logs(static_cast<std::size_t>(horizon));
  for (int n = 1; n <= horizon; ++n) logs[static_cast<std::size_t>(n - 1)] = log_psi_normal(theta0, theta1, sigma, n);
  return psi_from_logs(PsiMethod::ClosedFormNormal, std::move(logs));
}

PsiSequence psi_exponential(double theta0, double theta1, int horizon, double lambda) {
  check_horizon(horizon);
  Family f = Family::exponential();
  f.check_theta(theta0);
  f.check_theta(theta1);
  if (!(lambda > 0)) throw DomainError("lambda must be positive");
  // Rescaling the data by lambda maps the Exp(lambda) prior onto Exp(1).
  const double s0 = lambda * theta0;
  const double s1 = lambda * theta1;
  const double t = 0.5 * (s0 + s1);
  BesselHalfSeq k(t, horizon);
  const double off = (t - s0);
  const double log_step = std::log(s0) + std::log(s1) - 2.0 * std::log(t);
  std::vector<double> logs(static_cast<std::size_t>(horizon));
  for (int n = 1; n <= horizon; ++n) {
    double diag = (n - 0.5) * std::log(t) - (n + 0.5) * std::numbers::ln2 - log_factorial(n) -
                  0.5 * std::log(std::numbers::pi) + k.log_k(n) + std::log(n + t + t * k.rho(n));
    logs[static_cast<std::size_t>(n - 1)] = std::log(lambda) + diag + off + (s0 == s1 ? 0.0 : n * log_step);
  }
  return psi_from_logs(PsiMethod::ClosedFormExpBessel, std::move(logs));
}

namespace {

double prior_log_weight(const Prior& prior, double theta0) {
  if (const auto* d = std::get_if<DiscretePrior>(&prior)) return log_rational(d->weight(atom_index(*d, Number(theta0))));
  return named_prior_log_density(std::get<NamedPrior>(prior), theta0);
}

// log of int pi(theta) p_theta(u_n = u) dtheta for a named prior without a
// closed-form prior predictive.
double inner_log_marginal(const Family& family, const NamedPrior& prior, int n, double u) {
  Interval support = named_prior_support(prior);
  const bool unit = support.lo == 0.0 && support.hi == 1.0;
  const bool half = support.lo == 0.0 && support.hi == kInf;
  double guess = 0.0;
  switch (family.kind()) {
    case FamilyKind::Bernoulli:
      guess = (u + 0.5) / (n + 1.0);
      break;
    case FamilyKind::Poisson:
      guess = (u + 0.5) / n;
      break;
    case FamilyKind::Normal:
      guess = u / n;
      break;
    case FamilyKind::Exponential:
      guess = n / std::max(u, 1e-300);
      break;
  }
  auto to_theta = [&](double t) {
    if (unit) return 1.0 / (1.0 + std::exp(-t));
    if (half) return std::exp(t);
    return t;
  };
  auto log_jac = [&](double t, double th) {
    if (unit) return std::log(th) + std::log1p(-th);
    if (half) return t;
    return 0.0;
  };
  double center = 0.0;
  double scale = 1.0;
  if (unit) {
    guess = std::clamp(guess, 1e-12, 1.0 - 1e-12);
    center = std::log(guess / (1.0 - guess));
    scale = 1.0 / std::sqrt((n + 2.0) * guess * (1.0 - guess));
  } else if (half) {
    guess = std::max(guess, 1e-12);
    center = std::log(guess);
    scale = 1.0 / std::sqrt(n + 1.0);
  } else {
    center = guess;
    scale = (family.kind() == FamilyKind::Normal ? family.sigma() : 1.0) / std::sqrt(static_cast<double>(n));
  }
  auto log_f = [&](double t) {
    double th = to_theta(t);
    if (!(th > support.lo && th < support.hi)) return -kInf;
    if (!family.theta_domain().contains(th)) return -kInf;
    return named_prior_log_density(prior, th) + suff_stat_log_density(family, th, n, u) + log_jac(t, th);
  };
  if (log_f(center) == -kInf) throw UnsupportedError("inner quadrature: prior and likelihood do not overlap");
  return integrate_log_peaked(log_f, center, scale, 1e-12).log_value;
}

double log_marginal(const Family& family, const Prior& prior, int n, double u) {
  if (const auto* named = std::get_if<NamedPrior>(&prior)) {
    if (!has_closed_marginal(family, *named)) return inner_log_marginal(family, *named, n, u);
  }
  return marginal_suffstat_logpmf(family, prior, n, u);
}

void check_prior_family(const Family& family, const Prior& prior) {
  if (const auto* d = std::get_if<DiscretePrior>(&prior)) {
    d->check_family(family);
    return;
  }
  const NamedPrior& named = std::get<NamedPrior>(prior);
  validate(named);
  Interval s = named_prior_support(named);
  Interval dom = family.theta_domain();
  if (s.lo < dom.lo || s.hi > dom.hi)
    throw UnsupportedError("prior " + describe(named) + " puts mass outside the " + std::string(family.name()) +
                           " parameter domain");
}

}  // namespace

QuadratureResult psi_quadrature(const Family& family, const Prior& prior, double theta0, double theta1, int n,
                                const PsiQuadratureOptions& options) {
  if (n < 1) throw DomainError("psi_quadrature: n >= 1 required");
  check_prior_family(family, prior);
  if (family.kind() == FamilyKind::Bernoulli) {
    if (!(theta0 >= 0.0 && theta0 <= 1.0) || !(theta1 >= 0.0 && theta1 <= 1.0))
      throw DomainError("bernoulli theta outside [0, 1]");
  } else {
    family.check_theta(theta0);
    family.check_theta(theta1);
  }
  const double log_pi0 = prior_log_weight(prior, theta0);
  if (log_pi0 == -kInf) return {0.0, 0.0};
  auto log_integrand = [&](double u) {
    double a = suff_stat_log_density(family, theta0, n, u);
    double b = suff_stat_log_density(family, theta1, n, u);
    if (a == -kInf || b == -kInf) return -kInf;
    return log_pi0 + a + b - log_marginal(family, prior, n, u);
  };
  GeometricAverage g = theta2_and_w(family, theta0, theta1);

  switch (family.kind()) {
    case FamilyKind::Bernoulli: {
      std::vector<double> terms;
      for (int k = 0; k <= n; ++k) terms.push_back(log_integrand(k));
      double v = std::exp(log_sum_exp_compensated(terms));
      return {v, 4.0 * (n + 1) * std::numeric_limits<double>::epsilon() * v};
    }
    case FamilyKind::Poisson: {
      // Sum upward until the terms past the bulk stop contributing.
      const double bulk = n * std::max(theta0, theta1);
      std::vector<double> terms;
      double running_max = -kInf;
      for (long u = 0;; ++u) {
        double t = log_integrand(static_cast<double>(u));
        terms.push_back(t);
        running_max = std::max(running_max, t);
        if (u > bulk && t < running_max - 60.0) break;
        if (u > 100000000L) throw QuadratureError("poisson sum did not converge", 0.0, kInf);
      }
      double v = std::exp(log_sum_exp_compensated(terms));
      return {v, 4.0 * std::sqrt(static_cast<double>(terms.size())) * std::numeric_limits<double>::epsilon() * v};
    }
    case FamilyKind::Normal: {
      LogQuadratureResult r =
          integrate_log_peaked(log_integrand, n * g.theta2, family.sigma() * std::sqrt(static_cast<double>(n)), 1e-12);
      double v = std::exp(r.log_value);
      double err = v * r.rel_error;
      if (err > options.abs_tol) throw QuadratureError("psi quadrature: tolerance not reached", v, err);
      return {v, err};
    }
    case FamilyKind::Exponential: {
      auto in_log_u = [&](double v) {
        double u = std::exp(v);
        if (u == 0.0 || !std::isfinite(u)) return -kInf;
        return log_integrand(u) + v;
      };
      LogQuadratureResult r =
          integrate_log_peaked(in_log_u, std::log(n / g.theta2), 1.0 / std::sqrt(static_cast<double>(n)), 1e-12);
      double v = std::exp(r.log_value);
      double err = v * r.rel_error;
      if (err > options.abs_tol) throw QuadratureError("psi quadrature: tolerance not reached", v, err);
      return {v, err};
    }
  }
  throw UnsupportedError("psi quadrature: unknown family");
}

PsiSequence psi_quadrature_sequence(const Family& family, const Prior& prior, double theta0, double theta1,
                                    int horizon, const PsiQuadratureOptions& options) {
  check_horizon(horizon);
  std::vector<double> logs(static_cast<std::size_t>(horizon));
  parallel_for(logs.size(), [&](std::size_t i) {
    logs[i] = std::log(psi_quadrature(family, prior, theta0, theta1, static_cast<int>(i) + 1, options).value);
  });
  return psi_from_logs(PsiMethod::Quadrature, std::move(logs));
}

namespace {

struct BruteForceState {
  const std::vector<Rational>* p;  // atom success probabilities
  Rational theta1;
  std::size_t i0;
  int n;
  Rational total = 0;

  void descend(int depth, std::vector<Rational>& joint, const Rational& p1) {
    if (depth == n) {
      Rational evidence = 0;
      for (const auto& j : joint) evidence += j;
      if (sgn(evidence) == 0 || sgn(p1) == 0) return;
      total += p1 * joint[i0] / evidence;
      return;
    }
    for (int x = 0; x <= 1; ++x) {
      std::vector<Rational> next(joint.size());
      for (std::size_t j = 0; j < joint.size(); ++j) next[j] = joint[j] * (x == 1 ? (*p)[j] : 1 - (*p)[j]);
      descend(depth + 1, next, p1 * (x == 1 ? theta1 : 1 - theta1));
    }
  }
};

}  // namespace

Rational psi_bruteforce(const DiscretePrior& prior, const Rational& theta0, const Rational& theta1, int n) {
  if (n < 0) throw DomainError("psi_bruteforce: n must be non-negative");
  if (n > kBruteForceMaxN)
    throw DomainError("psi_bruteforce: n = " + std::to_string(n) + " exceeds the enumeration cap of " +
                      std::to_string(kBruteForceMaxN));
  if (!prior.is_exact()) throw DomainError("psi_bruteforce: rational prior atoms required");
  prior.check_family(Family::bernoulli());
  if (theta1 < 0 || theta1 > 1) throw DomainError("theta1 outside [0, 1]");
  const std::size_t i0 = atom_index(prior, Number(theta0));
  std::vector<Rational> p;
  std::vector<Rational> joint;
  for (const auto& atom : prior.atoms()) {
    p.push_back(atom.theta.exact());
    joint.push_back(atom.weight);
  }
  BruteForceState state{&p, theta1, i0, n};
  state.descend(0, joint, Rational(1));
  state.total.canonicalize();
  return state.total;
}

}  // namespace pdyn
