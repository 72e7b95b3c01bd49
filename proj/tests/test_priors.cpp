#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "pdyn/errors.hpp"
#include "pdyn/priors.hpp"
#include "pdyn/quadrature.hpp"

using namespace pdyn;

namespace {

DiscretePrior figure1_prior() {
  return DiscretePrior({{Number(q(1, 2)), q(4100, 5001)},
                        {Number(q(13, 20)), q(1, 5001)},
                        {Number(q(17, 20)), q(900, 5001)}});
}

}  // namespace

TEST(DiscretePrior, Validation) {
  EXPECT_THROW(DiscretePrior({{Number(q(1, 2)), q(1, 2)}}), DomainError);
  EXPECT_THROW(DiscretePrior({{Number(q(1, 2)), q(1, 2)}, {Number(q(1, 2)), q(1, 2)}}),
               DomainError);
  EXPECT_THROW(DiscretePrior({{Number(q(1, 2)), q(3, 2)}, {Number(q(1, 3)), q(-1, 2)}}),
               DomainError);
  EXPECT_THROW(DiscretePrior({}), DomainError);
  EXPECT_NO_THROW(DiscretePrior({{Number(q(1, 2)), q(2, 2)}}));
}

TEST(DiscretePrior, AtomLookupAndFamilyCheck) {
  DiscretePrior p = figure1_prior();
  EXPECT_EQ(p.index_of(Number(q(13, 20))), 1u);
  EXPECT_FALSE(p.index_of(Number(q(1, 3))).has_value());
  EXPECT_TRUE(p.is_exact());
  EXPECT_NO_THROW(p.check_family(Family::bernoulli()));
  DiscretePrior edge({{Number(Rational(0)), q(1, 2)}, {Number(Rational(1)), q(1, 2)}});
  EXPECT_NO_THROW(edge.check_family(Family::bernoulli()));
  EXPECT_THROW(edge.check_family(Family::poisson()), DomainError);
}

TEST(Posterior, MatchesDirectBayesRule) {
  // Oracle: pi_j theta_j^k (1-theta_j)^(n-k), normalised by hand.
  DiscretePrior p = figure1_prior();
  for (int n : {0, 1, 5, 17})
    for (int k = 0; k <= n; ++k) {
      PosteriorVector post = posterior_given_suffstat(Family::bernoulli(), p, n, Number(Rational(k)));
      ASSERT_EQ(post.representation, Representation::Exact);
      std::vector<Rational> raw;
      Rational total = 0;
      for (const auto& a : p.atoms()) {
        Rational t = a.theta.exact();
        Rational v = a.weight;
        for (int i = 0; i < k; ++i) v *= t;
        for (int i = k; i < n; ++i) v *= 1 - t;
        raw.push_back(v);
        total += v;
      }
      for (std::size_t j = 0; j < raw.size(); ++j) EXPECT_EQ(post.exact_weights[j], raw[j] / total);
    }
}

TEST(Posterior, FloatPathAgreesWithExact) {
  DiscretePrior p = figure1_prior();
  PosteriorVector exact = posterior_given_suffstat(Family::bernoulli(), p, 30, Number(Rational(19)));
  PosteriorVector approx = posterior_given_suffstat(Family::bernoulli(), p, 30, Number(19.0));
  ASSERT_EQ(approx.representation, Representation::Float);
  for (std::size_t j = 0; j < p.size(); ++j)
    EXPECT_NEAR(approx.weights[j], exact.exact_weights[j].get_d(), 1e-14);
}

TEST(Posterior, ImpossibleObservation) {
  DiscretePrior p({{Number(Rational(0)), Rational(1)}});
  EXPECT_THROW(posterior_given_suffstat(Family::bernoulli(), p, 3, Number(Rational(1))), ImpossibleObservation);
}

TEST(Posterior, MeanParameter) {
  DiscretePrior p = figure1_prior();
  Number m = mean_parameter(prior_as_posterior(p));
  ASSERT_TRUE(m.is_exact());
  EXPECT_EQ(m.exact(), q(4100, 5001) * q(1, 2) + q(1, 5001) * q(13, 20) +
                           q(900, 5001) * q(17, 20));
}

TEST(Marginal, ExactBernoulliSumsToOne) {
  DiscretePrior p = figure1_prior();
  Rational total = 0;
  for (int k = 0; k <= 25; ++k) total += marginal_suffstat_pmf_exact(p, 25, k);
  EXPECT_EQ(total, 1);
}

TEST(Marginal, ConjugateClosedFormsNormalize) {
  const int n = 9;
  for (const NamedPrior& prior : {NamedPrior(Uniform01{}), NamedPrior(BetaPrior{7.0, 1.0}), NamedPrior(BetaPrior{0.5, 2.5})}) {
    double total = 0.0;
    for (int k = 0; k <= n; ++k) total += std::exp(marginal_suffstat_logpmf(Family::bernoulli(), prior, n, k));
    EXPECT_NEAR(total, 1.0, 1e-13) << describe(prior);
  }
  auto normal = [](double u) { return std::exp(marginal_suffstat_logpmf(Family::normal(2.0), StdNormal{}, n, u)); };
  EXPECT_NEAR(integrate(normal, -INFINITY, INFINITY).value, 1.0, 1e-9);
  auto expo = [](double u) { return std::exp(marginal_suffstat_logpmf(Family::exponential(), ExpPrior{2.5}, n, u)); };
  EXPECT_NEAR(integrate(expo, 0.0, INFINITY).value, 1.0, 1e-9);
}

TEST(Marginal, ClosedFormMatchesMixtureIntegral) {
  // Uniform prior: P(u_n = k) = 1/(n+1).
  for (int k = 0; k <= 6; ++k)
    EXPECT_NEAR(std::exp(marginal_suffstat_logpmf(Family::bernoulli(), NamedPrior(Uniform01{}), 6, k)), 1.0 / 7.0, 1e-15);
  // Normal: u_n ~ N(0, n sigma^2 + n^2).
  const double sigma = 1.5;
  const int n = 4;
  for (double u : {-3.0, 0.0, 2.5}) {
    double var = n * sigma * sigma + n * n;
    double expected = -0.5 * u * u / var - 0.5 * std::log(2 * M_PI * var);
    EXPECT_NEAR(marginal_suffstat_logpmf(Family::normal(sigma), NamedPrior(StdNormal{}), n, u), expected, 1e-12);
  }
}

TEST(NamedPrior, DensitiesIntegrateToOne) {
  for (const NamedPrior& prior : {NamedPrior(Uniform01{}), NamedPrior(BetaPrior{7.0, 1.0}), NamedPrior(BetaPrior{2.0, 3.0})}) {
    auto f = [&](double t) { return std::exp(named_prior_log_density(prior, t)); };
    EXPECT_NEAR(integrate(f, 0.0, 1.0).value, 1.0, 1e-10) << describe(prior);
  }
  auto g = [](double t) { return std::exp(named_prior_log_density(StdNormal{}, t)); };
  EXPECT_NEAR(integrate(g, -INFINITY, INFINITY).value, 1.0, 1e-10);
  auto e = [](double t) { return std::exp(named_prior_log_density(ExpPrior{0.7}, t)); };
  EXPECT_NEAR(integrate(e, 0.0, INFINITY).value, 1.0, 1e-10);
  EXPECT_THROW(validate(BetaPrior{0.0, 1.0}), DomainError);
  EXPECT_THROW(validate(ExpPrior{-1.0}), DomainError);
}

TEST(LogSumExp, EdgeCases) {
  EXPECT_EQ(log_sum_exp({}), -INFINITY);
  EXPECT_EQ(log_sum_exp({-INFINITY, -INFINITY}), -INFINITY);
  EXPECT_NEAR(log_sum_exp({1000.0, 1000.0}), 1000.0 + std::log(2.0), 1e-12);
  EXPECT_NEAR(log_sum_exp({0.0, std::log(3.0)}), std::log(4.0), 1e-15);
}
