#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pdyn/errors.hpp"
#include "pdyn/quadrature.hpp"

using namespace pdyn;

TEST(Integrate, KnownIntegrals) {
  EXPECT_NEAR(integrate([](double x) { return std::exp(-0.5 * x * x); }, -INFINITY, INFINITY).value,
              std::sqrt(2.0 * std::numbers::pi), 1e-10);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x); }, 0.0, INFINITY).value, 1.0, 1e-10);
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value, 2.0, 1e-12);
  EXPECT_NEAR(integrate([](double x) { return x * x * x; }, -1.0, 2.0).value, 15.0 / 4.0, 1e-12);
}

TEST(Integrate, ReportsFailure) {
  QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  opts.max_depth = 2;
  EXPECT_THROW(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opts), QuadratureError);
}

TEST(IntegrateLogPeaked, FarOutsideDoubleRange) {
  // exp(2000 - x^2/2): log integral = 2000 + log sqrt(2 pi)
  auto r = integrate_log_peaked([](double x) { return 2000.0 - 0.5 * x * x; }, 0.0, 1.0);
  EXPECT_NEAR(r.log_value, 2000.0 + 0.5 * std::log(2.0 * std::numbers::pi), 1e-11);
  EXPECT_LT(r.rel_error, 1e-12);
  // Gamma(50.5) through a log-scale integrand: int exp(a v - e^v) dv = Gamma(a)
  auto g = integrate_log_peaked([](double v) { return 50.5 * v - std::exp(v); }, std::log(50.5), 1.0 / std::sqrt(50.5));
  EXPECT_NEAR(g.log_value, std::lgamma(50.5), 1e-11);
}

TEST(IntegrateLogPeaked, NonDecayingIntegrandThrows) {
  EXPECT_THROW(integrate_log_peaked([](double) { return 0.0; }, 0.0, 1.0), QuadratureError);
  EXPECT_THROW(integrate_log_peaked([](double) { return -INFINITY; }, 0.0, 1.0), QuadratureError);
}
