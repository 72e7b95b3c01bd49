#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pdyn/errors.hpp"
#include "pdyn/families.hpp"
#include "pdyn/quadrature.hpp"

using namespace pdyn;

namespace {

std::vector<Family> all_families() {
  return {Family::bernoulli(), Family::normal(1.7), Family::poisson(), Family::exponential()};
}

double draw_theta(const Family& f, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  switch (f.kind()) {
    case FamilyKind::Bernoulli:
      return u(rng);
    case FamilyKind::Normal:
      return 6.0 * u(rng) - 3.0;
    default:
      return 5.0 * u(rng);
  }
}

}  // namespace

TEST(Family, EtaInverseRoundTrip) {
  std::mt19937_64 rng(1);
  for (const Family& f : all_families())
    for (int i = 0; i < 100; ++i) {
      double t = draw_theta(f, rng);
      EXPECT_NEAR(f.eta_inverse(f.eta(t)), t, 1e-12 * std::max(1.0, std::fabs(t))) << f.name();
    }
}

TEST(Family, FisherInformationMatchesCurvature) {
  // I(theta) = A''(eta) eta'(theta)^2, by central differences.
  std::mt19937_64 rng(2);
  for (const Family& f : all_families())
    for (int i = 0; i < 30; ++i) {
      double t = draw_theta(f, rng);
      double e = f.eta(t);
      double h = 1e-4;
      double a2 = (f.log_partition(e + h) - 2 * f.log_partition(e) + f.log_partition(e - h)) / (h * h);
      double de = (f.eta(t + 1e-6) - f.eta(t - 1e-6)) / 2e-6;
      EXPECT_NEAR(fisher_information(f, t), a2 * de * de, 1e-4 * fisher_information(f, t)) << f.name() << " " << t;
    }
}

TEST(Family, DensityIsExponentialFamilyForm) {
  std::mt19937_64 rng(3);
  for (const Family& f : all_families()) {
    double t = draw_theta(f, rng);
    for (double x : {0.0, 1.0, 2.0, 3.5}) {
      if (!f.in_support(x)) continue;
      double lhs = log_density(f, t, x);
      double rhs = f.eta(t) * f.sufficient_statistic(x) - f.log_partition(f.eta(t)) - f.log_base_measure(x);
      EXPECT_NEAR(lhs, rhs, 1e-12) << f.name();
    }
  }
}

TEST(Family, BhattacharyyaMatchesDirectIntegral) {
  // w = (int sqrt(p0 p1))^2 computed from the densities themselves.
  std::mt19937_64 rng(4);
  for (const Family& f : all_families()) {
    for (int i = 0; i < 10; ++i) {
      double t0 = draw_theta(f, rng);
      double t1 = draw_theta(f, rng);
      double bc = 0.0;
      auto integrand = [&](double x) { return std::exp(0.5 * (log_density(f, t0, x) + log_density(f, t1, x))); };
      switch (f.kind()) {
        case FamilyKind::Bernoulli:
          bc = integrand(0.0) + integrand(1.0);
          break;
        case FamilyKind::Poisson:
          for (int x = 0; x < 200; ++x) bc += integrand(x);
          break;
        case FamilyKind::Normal:
          bc = integrate(integrand, -INFINITY, INFINITY).value;
          break;
        case FamilyKind::Exponential:
          bc = integrate(integrand, 0.0, INFINITY).value;
          break;
      }
      GeometricAverage g = theta2_and_w(f, t0, t1);
      EXPECT_NEAR(g.w, bc * bc, 1e-9) << f.name();
      EXPECT_NEAR(f.eta(g.theta2), 0.5 * (f.eta(t0) + f.eta(t1)), 1e-12) << f.name();
    }
  }
}

TEST(Family, DiagonalHasUnitAffinity) {
  for (const Family& f : all_families()) {
    GeometricAverage g = theta2_and_w(f, 0.4, 0.4);
    EXPECT_DOUBLE_EQ(g.w, 1.0);
    EXPECT_NEAR(g.theta2, 0.4, 1e-15);
  }
}

TEST(Family, SufficientStatisticLawNormalizes) {
  const int n = 7;
  {
    double total = 0.0;
    for (int k = 0; k <= n; ++k) total += std::exp(suff_stat_log_density(Family::bernoulli(), 0.3, n, k));
    EXPECT_NEAR(total, 1.0, 1e-14);
  }
  {
    double total = 0.0;
    for (int k = 0; k < 200; ++k) total += std::exp(suff_stat_log_density(Family::poisson(), 1.3, n, k));
    EXPECT_NEAR(total, 1.0, 1e-13);
  }
  {
    auto f = [](double u) { return std::exp(suff_stat_log_density(Family::normal(2.0), 0.5, n, u)); };
    EXPECT_NEAR(integrate(f, -INFINITY, INFINITY).value, 1.0, 1e-10);
  }
  {
    auto f = [](double u) { return std::exp(suff_stat_log_density(Family::exponential(), 1.5, n, u)); };
    EXPECT_NEAR(integrate(f, 0.0, INFINITY).value, 1.0, 1e-10);
  }
}

TEST(Family, DomainChecks) {
  EXPECT_THROW(Family::bernoulli().check_theta(1.5), DomainError);
  EXPECT_THROW(Family::poisson().check_theta(0.0), DomainError);
  EXPECT_THROW(Family::exponential().check_theta(-1.0), DomainError);
  EXPECT_NO_THROW(Family::normal(1.0).check_theta(-10.0));
  EXPECT_THROW(Family::normal(0.0), DomainError);
}

TEST(ExactPmf, BinomialSumsToOneAndMatchesSequenceProbability) {
  const Rational theta(3, 7);
  Rational total = 0;
  for (int k = 0; k <= 12; ++k) {
    total += binomial_pmf_exact(theta, 12, k);
    EXPECT_EQ(binomial_pmf_exact(theta, 12, k), Rational(binomial(12, k)) * bernoulli_sequence_prob(theta, 12, k));
  }
  EXPECT_EQ(total, 1);
  EXPECT_EQ(bernoulli_sequence_prob(Rational(0), 3, 0), 1);
  EXPECT_EQ(bernoulli_sequence_prob(Rational(1), 3, 2), 0);
}

TEST(Xlogy, ZeroTimesLogZero) {
  EXPECT_EQ(xlogy(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(xlogy(2.0, std::numbers::e), 2.0);
}
