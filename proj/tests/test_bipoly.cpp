#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "pdyn/bipoly.hpp"

using namespace pdyn;

namespace {

UniPoly random_poly(std::mt19937_64& rng, int max_degree) {
  std::vector<Integer> c;
  int d = static_cast<int>(rng() % static_cast<unsigned>(max_degree + 1));
  for (int i = 0; i <= d; ++i) c.push_back(Integer(static_cast<long>(rng() % 201) - 100));
  return UniPoly(c);
}

BiPoly random_bipoly(std::mt19937_64& rng) {
  BiPoly p;
  for (int i = 0; i < 3; ++i) p = p + BiPoly::from_theta_poly(random_poly(rng, 3), i);
  return p;
}

}  // namespace

TEST(UniPoly, ArithmeticAndPrinting) {
  UniPoly p{1920, -256, 128};
  EXPECT_EQ(p.to_string(), "128*theta^2 - 256*theta + 1920");
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.derivative(), (UniPoly{-256, 256}));
  EXPECT_EQ((UniPoly{1, 1} * UniPoly{-1, 1}), (UniPoly{-1, 0, 1}));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_EQ(UniPoly{}.to_string(), "0");
  EXPECT_EQ(p.eval(q(1, 2)), Rational(1920 - 128 + 32));
  EXPECT_DOUBLE_EQ(p.eval(2.0), 1920.0 - 512.0 + 512.0);
}

TEST(UniPoly, RingIdentitiesOnSeededPolynomials) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    UniPoly a = random_poly(rng, 5);
    UniPoly b = random_poly(rng, 5);
    UniPoly c = random_poly(rng, 5);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
    Rational x = q(static_cast<long>(rng() % 21) - 10, 7);
    EXPECT_EQ((a * b).eval(x), a.eval(x) * b.eval(x));
  }
}

TEST(Sturm, CountsRootsAbove) {
  EXPECT_EQ(count_roots_above(UniPoly{-2, 0, 1}, Rational(0)), 1);  // sqrt 2
  EXPECT_EQ(count_roots_above(UniPoly{-2, 0, 1}, Rational(-10)), 2);
  EXPECT_EQ(count_roots_above(UniPoly{6, -5, 1}, Rational(0)), 2);  // 2, 3
  EXPECT_EQ(count_roots_above(UniPoly{6, -5, 1}, q(5, 2)), 1);
  EXPECT_EQ(count_roots_above(UniPoly{1, 0, 1}, Rational(-100)), 0);
  EXPECT_EQ(count_roots_above(UniPoly{1, -2, 1}, Rational(0)), 1);  // double root at 1
}

TEST(Sturm, PositivityOnHalfLine) {
  EXPECT_TRUE(positive_on_nonnegative_axis(UniPoly{1920, -256, 128}));
  EXPECT_FALSE(positive_on_nonnegative_axis(UniPoly{1, -2, 1}));
  EXPECT_FALSE(positive_on_nonnegative_axis(UniPoly{0, 1}));
  EXPECT_TRUE(positive_on_nonnegative_axis(UniPoly{3}));
  EXPECT_TRUE(positive_on_nonnegative_axis(UniPoly{1, 5, 0, 2}));
  EXPECT_FALSE(positive_on_nonnegative_axis(UniPoly{-1}));
}

TEST(BiPoly, BasicsAndPrinting) {
  BiPoly m = BiPoly::m();
  BiPoly t = BiPoly::theta();
  BiPoly p = m * m * t + BiPoly::constant(3) * t - BiPoly::constant(5);
  EXPECT_EQ(p.coefficient(2, 1), 1);
  EXPECT_EQ(p.coefficient(0, 1), 3);
  EXPECT_EQ(p.coefficient(0, 0), -5);
  EXPECT_EQ(p.degree_m(), 2);
  EXPECT_EQ(p.total_degree(), 3);
  EXPECT_EQ(p.coefficient_in_m(0), (UniPoly{-5, 3}));
  EXPECT_DOUBLE_EQ(p.eval(2.0, 3.0), 12.0 + 9.0 - 5.0);
  EXPECT_EQ(p.to_string(), "m^2*theta + 3*theta - 5");
}

TEST(BiPoly, PowerAndBinomialIdentity) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20; ++i) {
    BiPoly a = random_bipoly(rng);
    BiPoly b = random_bipoly(rng);
    EXPECT_EQ((a + b).pow(2), a.pow(2) + BiPoly::constant(2) * a * b + b.pow(2));
    EXPECT_EQ(a.pow(3), a * a * a);
    EXPECT_EQ(a.pow(0), BiPoly::constant(1));
    EXPECT_NEAR((a * b).eval(0.7, -1.3), a.eval(0.7, -1.3) * b.eval(0.7, -1.3), 1e-6);
  }
}
