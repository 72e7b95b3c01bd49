#include <gtest/gtest.h>

#include <map>
#include <random>

#include "test_util.hpp"
#include "pdyn/errors.hpp"
#include "pdyn/orders.hpp"
#include "pdyn/psi.hpp"

using namespace pdyn;

namespace {

DiscretePrior three_atoms() {
  return DiscretePrior({{Number(q(1, 4)), q(1, 3)},
                        {Number(q(1, 2)), q(1, 3)},
                        {Number(q(3, 4)), q(1, 3)}});
}

}  // namespace

TEST(FiniteLawTest, MergesAndValidates) {
  FiniteLaw l = make_law({{q(1, 2), q(1, 4)}, {q(1, 2), q(1, 4)}, {Rational(1), q(1, 2)}});
  ASSERT_EQ(l.support.size(), 2u);
  EXPECT_EQ(l.mass_at(q(1, 2)), q(1, 2));
  EXPECT_EQ(l.mass_at(Rational(7)), 0);
  EXPECT_THROW(make_law({{Rational(0), q(1, 2)}}), DomainError);
  EXPECT_THROW(make_law({{Rational(0), q(3, 2)}, {Rational(1), q(-1, 2)}}), DomainError);
}

TEST(FiniteLawTest, LikelihoodRatioOrder) {
  FiniteLaw lo = make_law({{Rational(0), q(1, 2)}, {Rational(1), q(1, 2)}});
  FiniteLaw hi = make_law({{Rational(0), q(1, 4)}, {Rational(1), q(3, 4)}});
  EXPECT_TRUE(lr_dominates(hi, lo));
  EXPECT_FALSE(lr_dominates(lo, hi));
  EXPECT_TRUE(lr_dominates(lo, lo));
  // Disjoint supports: the law sitting to the right dominates.
  FiniteLaw right = make_law({{Rational(2), Rational(1)}});
  EXPECT_TRUE(lr_dominates(right, lo));
  EXPECT_FALSE(lr_dominates(lo, right));
  // Non-monotone ratio on three points.
  FiniteLaw a = make_law({{Rational(0), q(1, 3)}, {Rational(1), q(1, 3)}, {Rational(2), q(1, 3)}});
  FiniteLaw b = make_law({{Rational(0), q(1, 4)}, {Rational(1), q(1, 2)}, {Rational(2), q(1, 4)}});
  EXPECT_FALSE(lr_dominates(a, b));
  EXPECT_FALSE(lr_dominates(b, a));
}

TEST(VFunction, ValuesAndDomain) {
  // V(y) = t0 t1 / y + (1 - t0)(1 - t1)/(1 - y); V(t0) = 1 for every t1.
  for (int a = 1; a < 10; ++a)
    for (int b = 1; b < 10; ++b) EXPECT_EQ(v_function(q(a, 10), q(a, 10), q(b, 10)), 1);
  EXPECT_EQ(v_function(q(1, 2), q(1, 4), q(3, 4)), q(3, 4));
  EXPECT_DOUBLE_EQ(v_function(0.5, 0.25, 0.75), 0.75);
  EXPECT_THROW(v_function(Rational(1), q(1, 2), q(1, 2)), DomainError);
  EXPECT_THROW(v_function(0.0, 0.5, 0.5), DomainError);
}

TEST(PriorCriterionTest, EqualityWhenMeanIsAnAtom) {
  // Prior mean 1/2 equals theta1.
  PriorCriterion c = check_prior_criterion(three_atoms(), q(1, 4), q(1, 2));
  EXPECT_EQ(c.mean, q(1, 2));
  EXPECT_EQ(c.predicted, Direction::Equal);
  EXPECT_EQ(c.expected, c.prior_weight);
  EXPECT_TRUE(c.consistent());
  // Mean strictly between: below.
  PriorCriterion below = check_prior_criterion(three_atoms(), q(1, 4), q(3, 4));
  EXPECT_EQ(below.observed, Direction::Below);
  EXPECT_TRUE(below.consistent());
  // Mean outside: above.
  PriorCriterion above = check_prior_criterion(three_atoms(), q(3, 4), q(3, 4));
  EXPECT_EQ(above.observed, Direction::Above);
  EXPECT_TRUE(above.consistent());
}

TEST(PriorCriterionTest, SeededRandomPriors) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    RandomBernoulliScenario s = random_bernoulli_scenario(rng, 5);
    EXPECT_TRUE(check_prior_criterion(s.prior, s.theta0, s.theta1).consistent());
  }
}

TEST(Symmetry, SwapIdentity) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    RandomBernoulliScenario s = random_bernoulli_scenario(rng, 4);
    for (int n : {1, 4, 9}) EXPECT_TRUE(symmetry_check(s.prior, s.theta0, s.theta1, n).equal());
  }
}

TEST(PosteriorLaw, MartingaleUnderMarginal) {
  // E[q_n] = pi(theta0) under the prior predictive.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    RandomBernoulliScenario s = random_bernoulli_scenario(rng, 4);
    for (int n : {0, 1, 5}) {
      FiniteLaw l = posterior_law(s.prior, s.theta0, n, std::nullopt);
      Rational mean = 0;
      for (std::size_t k = 0; k < l.support.size(); ++k) mean += l.support[k] * l.probabilities[k];
      EXPECT_EQ(mean, s.prior.weight(*s.prior.index_of(Number(s.theta0))));
    }
  }
  EXPECT_THROW(posterior_law(three_atoms(), q(1, 3), 2, std::nullopt), DomainError);
}

TEST(PosteriorLaw, GeneratorLawMeanIsPsi) {
  DiscretePrior p = three_atoms();
  for (int n = 1; n <= 6; ++n) {
    FiniteLaw l = posterior_law(p, q(1, 4), n, q(3, 4));
    Rational mean = 0;
    for (std::size_t k = 0; k < l.support.size(); ++k) mean += l.support[k] * l.probabilities[k];
    EXPECT_EQ(mean, psi_bernoulli_finite_exact(p, q(1, 4), q(3, 4), n));
  }
}

TEST(OneStep, VIdentityMatchesEnumeration) {
  DiscretePrior p = three_atoms();
  PosteriorVector post = posterior_given_suffstat(Family::bernoulli(), p, 3, Number(Rational(2)));
  Number via_v = one_step_expected_posterior(post, Number(q(1, 4)), Number(q(1, 2)));
  EXPECT_EQ(via_v.exact(), one_step_enumerated(p, 3, 2, q(1, 4), q(1, 2)));
}

TEST(Reversal, WitnessIsGenuine) {
  auto w = find_lr_reversal(42);
  ASSERT_TRUE(w.has_value());
  EXPECT_NE(w->alpha, w->gamma);
  EXPECT_TRUE(lr_dominates(w->under_gamma, w->under_marginal));
  EXPECT_FALSE(lr_dominates(w->under_marginal, w->under_gamma));
  auto again = find_lr_reversal(42);
  EXPECT_EQ(again->alpha, w->alpha);
  EXPECT_EQ(again->n, w->n);
}

TEST(DrawInt, RangeAndUniformity) {
  std::mt19937_64 rng(1234);
  std::map<std::int64_t, int> counts;
  for (int i = 0; i < 60000; ++i) {
    auto x = draw_int(rng, -2, 3);
    ASSERT_GE(x, -2);
    ASSERT_LE(x, 3);
    ++counts[x];
  }
  EXPECT_EQ(counts.size(), 6u);
  for (auto& [v, c] : counts) EXPECT_NEAR(c, 10000, 500) << v;
  std::mt19937_64 a(7), b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(draw_int(a, 0, 1000), draw_int(b, 0, 1000));
}
