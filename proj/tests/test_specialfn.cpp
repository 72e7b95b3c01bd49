#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"
#include "pdyn/errors.hpp"
#include "pdyn/specialfn.hpp"

using namespace pdyn;

namespace {

// Oracle: P_n(x) = 2^-n sum_k C(n,k)^2 (x-1)^(n-k) (x+1)^k, exact.
Rational legendre_oracle(int n, const Rational& x) {
  Rational sum = 0;
  for (int k = 0; k <= n; ++k) {
    Rational term = Rational(binomial(n, k) * binomial(n, k));
    for (int i = 0; i < n - k; ++i) term *= x - 1;
    for (int i = 0; i < k; ++i) term *= x + 1;
    sum += term;
  }
  Integer two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return sum / two_n;
}

// Oracle: S_n(y, z) straight from the definition.
Rational s_n_oracle(const Rational& y, const Rational& z, int n) {
  Rational sum = 0;
  for (int k = 0; k <= n; ++k) {
    Rational term = Rational(binomial(n, k) * binomial(n, k));
    for (int i = 0; i < k; ++i) term *= y;
    for (int i = 0; i < n - k; ++i) term *= z;
    sum += term;
  }
  return (n + 1) * sum;
}

}  // namespace

TEST(Legendre, MatchesExplicitSumAtRationalPoints) {
  for (const Rational& x : {q(3, 2), Rational(5), q(101, 100)}) {
    LegendreSequence seq = legendre_sequence(60, x.get_d());
    for (int n = 0; n <= 60; ++n) {
      double expected = log_rational(legendre_oracle(n, x));
      EXPECT_NEAR(seq.log_abs[static_cast<std::size_t>(n)], expected, 1e-12 * std::max(1.0, std::fabs(expected)))
          << "n=" << n << " x=" << x.get_d();
      EXPECT_NEAR(legendre_P(n, x.get_d()).log_abs, expected, 1e-12 * std::max(1.0, std::fabs(expected)));
    }
  }
}

TEST(Legendre, KnownValuesAndParity) {
  const double s3 = std::sqrt(3.0);
  EXPECT_NEAR(legendre_P(2, s3).value(), 4.0, 1e-14);
  EXPECT_NEAR(legendre_P(3, s3).value(), 6.0 * s3, 1e-13);
  for (int n = 0; n <= 20; ++n) {
    LegendreEval pos = legendre_P(n, 2.5);
    LegendreEval neg = legendre_P(n, -2.5);
    EXPECT_EQ(neg.sign, n % 2 == 0 ? pos.sign : -pos.sign);
    EXPECT_DOUBLE_EQ(neg.log_abs, pos.log_abs);
  }
  EXPECT_THROW(legendre_P(3, 0.5), DomainError);
}

TEST(Legendre, PlainRecurrenceInsideInterval) {
  // P_2(x) = (3x^2 - 1)/2, P_3(x) = (5x^3 - 3x)/2
  for (double x : {-0.9, -0.2, 0.0, 0.4, 1.0}) {
    EXPECT_NEAR(legendre_P_plain(2, x), 0.5 * (3 * x * x - 1), 1e-15);
    EXPECT_NEAR(legendre_P_plain(3, x), 0.5 * (5 * x * x * x - 3 * x), 1e-15);
  }
}

TEST(Legendre, LeadingCoefficient) {
  EXPECT_EQ(legendre_leading_coefficient(2), q(3, 2));
  EXPECT_EQ(legendre_leading_coefficient(3), q(5, 2));
  for (int n = 1; n <= 30; ++n) {
    Integer two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
    EXPECT_EQ(legendre_leading_coefficient(n), q(binomial(2 * n, n), two_n));
  }
}

TEST(Turan, RatioMatchesExactOracle) {
  for (const Rational& x : {q(3, 2), Rational(7), q(1001, 1000)})
    for (int n = 1; n <= 40; ++n) {
      Rational a = legendre_oracle(n - 1, x);
      Rational b = legendre_oracle(n, x);
      Rational c = legendre_oracle(n + 1, x);
      double expected = Rational(a * c / (b * b)).get_d();
      EXPECT_NEAR(turan_ratio(n, x.get_d()).ratio, expected, 1e-13);
    }
}

TEST(Turan, BoundAndLimitFormulas) {
  EXPECT_EQ(turan_bound(2), q(9, 8));
  EXPECT_EQ(turan_limit(2), q(10, 9));
  for (int n = 1; n <= 50; ++n) {
    EXPECT_EQ(turan_bound(n), q((n + 1) * (n + 1), n * (n + 2)));
    EXPECT_EQ(turan_limit(n), q(n * (2 * n + 1), (n + 1) * (2 * n - 1)));
  }
}

TEST(Turan, ReversedAndBoundedOnSeededGrid) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lx(-6.0, 6.0);
  for (int i = 0; i < 2000; ++i) {
    double x = 1.0 + std::pow(10.0, lx(rng));
    int n = 2 + static_cast<int>(rng() % 299);
    TuranRatio t = turan_ratio(n, x);
    EXPECT_GT(t.ratio, 1.0);
    EXPECT_LE(t.ratio, t.bound.get_d() * (1 + 1e-15));
  }
}

TEST(Turan, EqualityWitness) {
  const double s3 = std::sqrt(3.0);
  EXPECT_NEAR(turan_ratio(2, s3).ratio, 9.0 / 8.0, 1e-14);
  EXPECT_NEAR(turan_ratio(3, s3).ratio, 19.0 / 18.0, 1e-14);
}

TEST(SN, ExactMatchesDefinition) {
  for (auto [y, z] : {std::pair{q(1, 2), q(1, 5)}, std::pair{Rational(1), Rational(1)},
                      std::pair{q(9, 100), q(1, 100)}}) {
    std::vector<Rational> v = s_n_exact(y, z, 25);
    for (int n = 1; n <= 25; ++n) EXPECT_EQ(v[static_cast<std::size_t>(n - 1)], s_n_oracle(y, z, n));
  }
  EXPECT_EQ(s_n_exact(Rational(1), Rational(1), 2)[1], 18);
  EXPECT_EQ(s_n_exact(q(1, 4), q(1, 4), 1)[0], 1);
}

TEST(SN, LogFormsAgreeWithExact) {
  for (auto [y, z] : {std::pair{q(1, 2), q(1, 5)}, std::pair{q(3, 10), q(3, 10)},
                      std::pair{q(1, 1000), Rational(2)}}) {
    std::vector<double> lg = s_n_log(y.get_d(), z.get_d(), 80);
    std::vector<Rational> ex = s_n_exact(y, z, 80);
    for (int n = 1; n <= 80; ++n) {
      double expected = log_rational(ex[static_cast<std::size_t>(n - 1)]);
      EXPECT_NEAR(lg[static_cast<std::size_t>(n - 1)], expected, 1e-12 * std::max(1.0, std::fabs(expected)));
      EXPECT_NEAR(s_n_log_direct(y.get_d(), z.get_d(), n), expected, 1e-12 * std::max(1.0, std::fabs(expected)));
    }
  }
}

TEST(Bessel, MatchesBoostReference) {
  for (double t : {0.01, 0.3, 1.0, 4.0, 25.0, 50.0}) {
    BesselHalfSeq k = bessel_K_half(t, 80);
    for (int n = 0; n <= 80; ++n) {
      double ref = boost::math::cyl_bessel_k(n + 0.5, t);
      if (!std::isfinite(ref)) continue;
      EXPECT_NEAR(k.log_k(n), std::log(ref), 1e-12 * std::max(1.0, std::fabs(std::log(ref)))) << t << " " << n;
    }
  }
}

TEST(Bessel, ClosedFormsAndRatios) {
  BesselHalfSeq k(1.0, 5);
  const double k0 = std::sqrt(std::numbers::pi / 2.0) * std::exp(-1.0);
  EXPECT_NEAR(k.k(0), k0, 1e-16);
  EXPECT_NEAR(k.k(1), 2.0 * k0, 1e-15);
  EXPECT_NEAR(k.k(-1), k0, 1e-16);
  EXPECT_NEAR(k.rho(2), 2.0 / 7.0, 1e-15);
  EXPECT_THROW(bessel_K_half(0.0, 3), DomainError);
}

TEST(Bessel, ExactRatiosAgreeWithFloat) {
  EXPECT_EQ(bessel_ratios_exact(Rational(1), 2)[1], q(2, 7));
  for (const Rational& t : {q(1, 100), Rational(1), q(7, 2), Rational(40)}) {
    auto exact = bessel_ratios_exact(t, 120);
    BesselHalfSeq k(t.get_d(), 120);
    for (int n = 1; n <= 120; ++n) EXPECT_NEAR(exact[static_cast<std::size_t>(n - 1)].get_d() / k.rho(n), 1.0, 1e-13);
  }
}

TEST(Segura, BracketHoldsExactly) {
  for (const Rational& t : {q(1, 100), q(1, 3), Rational(2), Rational(50)}) {
    auto rho = bessel_ratios_exact(t, 200);
    for (int n = 2; n <= 200; ++n) {
      const Rational& r = rho[static_cast<std::size_t>(n - 1)];
      EXPECT_TRUE(segura_bracket_exact(n, t, r)) << n;
      EXPECT_LT(q_n_of_rho_exact(n, t, r), 1) << n;
    }
  }
  // Values outside the bracket are rejected.
  EXPECT_FALSE(segura_bracket_exact(5, Rational(2), Rational(3)));
  EXPECT_FALSE(segura_bracket_exact(5, Rational(2), q(1, 1000)));
}

TEST(Segura, FloatBoundsAndMonotoneQ) {
  for (double t : {0.2, 1.0, 10.0}) {
    for (int n = 2; n <= 100; ++n) {
      SeguraBounds b = segura_bounds(n, t);
      EXPECT_DOUBLE_EQ(b.eta, t / (n + 0.5 + std::sqrt((n - 1.5) * (n - 1.5) + t * t)));
      EXPECT_EQ(b.upper, t);
      EXPECT_LT(q_n_of_rho(n, t, b.eta), 1.0);
      EXPECT_GT(q_n_of_rho(n, t, 0.25 * t), q_n_of_rho(n, t, 0.75 * t));
    }
  }
  EXPECT_THROW(q_n_of_rho(3, 1.0, 2.0), DomainError);
}

TEST(Integrals, LemmasMatchQuadrature) {
  for (double t : {0.5, 1.0, 2.0}) {
    BesselHalfSeq k(t, 12);
    for (int n = 1; n <= 10; ++n) {
      EXPECT_NEAR(integral_I_nn(n, t, k) / integral_I_quadrature(n, n, t), 1.0, 1e-10);
      EXPECT_NEAR(integral_I_shifted(n, t, k) / integral_I_quadrature(n - 1, n + 1, t), 1.0, 1e-10);
    }
  }
  // I_{0,0} = 1/(2 theta)
  EXPECT_NEAR(integral_I_quadrature(0, 0, 1.5), 1.0 / 3.0, 1e-12);
}

TEST(LogFactorial, ExactTableAndLgamma) {
  EXPECT_EQ(log_factorial(0), 0.0);
  EXPECT_NEAR(log_factorial(10), std::log(3628800.0), 1e-14);
  for (int n : {20, 100, 170, 171, 1000, 100000})
    EXPECT_NEAR(log_factorial(n), std::lgamma(n + 1.0), 1e-10 * std::lgamma(n + 1.0));
}
