#include <gtest/gtest.h>

#include "pdyn/certify.hpp"

using namespace pdyn;

TEST(AppendixA4, ExpansionIsASquaredMinusBSquaredC) {
  BiPoly A = a4_polynomial_A();
  BiPoly B = a4_polynomial_B();
  BiPoly C = a4_polynomial_C();
  A4Certification cert = certify_appendix_a4();
  EXPECT_EQ(cert.E, A * A - B * B * C);
  EXPECT_EQ(cert.E.degree_m(), 7);
}

TEST(AppendixA4, CoefficientsMatchTabulatedList) {
  A4Certification cert = certify_appendix_a4();
  std::vector<UniPoly> published = a4_published_e();
  ASSERT_EQ(published.size(), 8u);
  ASSERT_EQ(cert.e_coeffs.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    const int power = 7 - static_cast<int>(i);
    EXPECT_EQ(cert.E.coefficient_in_m(power), published[i]) << "e" << power;
    EXPECT_TRUE(cert.e_coeffs[i].matches_published);
  }
  EXPECT_EQ(published[0], UniPoly{128});
}

TEST(AppendixA4, EveryCoefficientIsPositive) {
  A4Certification cert = certify_appendix_a4();
  EXPECT_TRUE(cert.passed());
  for (const auto& c : cert.a_coeffs) {
    EXPECT_TRUE(c.positive_exact) << c.name;
    EXPECT_TRUE(c.passed()) << c.name;
  }
  for (const auto& c : cert.e_coeffs) {
    EXPECT_TRUE(c.positive_exact) << c.name;
    EXPECT_TRUE(c.passed()) << c.name;
  }
}

TEST(AppendixA4, TabulatedMinima) {
  A4Certification cert = certify_appendix_a4();
  bool found = false;
  for (const auto& c : cert.a_coeffs)
    if (c.name == "a0") {
      found = true;
      EXPECT_NEAR(c.numeric_min, 108.0, 1.0);
      EXPECT_NEAR(c.numeric_argmin, 0.73, 0.05);
    }
  EXPECT_TRUE(found);
  auto j = cert.to_json();
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Minimize, QuadraticAndQuartic) {
  NumericMinimum q = minimize_on_interval(UniPoly{5, -4, 1});  // (t-2)^2 + 1
  EXPECT_NEAR(q.argmin, 2.0, 1e-7);
  EXPECT_NEAR(q.value, 1.0, 1e-12);
  NumericMinimum e = minimize_on_interval(UniPoly{7, 3});  // increasing: min at 0
  EXPECT_NEAR(e.argmin, 0.0, 1e-9);
  EXPECT_NEAR(e.value, 7.0, 1e-9);
}
