#pragma once

#include <functional>

namespace pdyn {

struct QuadratureResult {
  double value;
  double error;  // estimated absolute error
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  unsigned max_depth = 18;  // bisection levels; the evaluation budget
};

// Adaptive 61-point Gauss-Kronrod with interval bisection. Infinite limits are
// allowed; boost maps them onto a finite range with x = t/(1-t) (half line) or
// x = t/(1-t^2) (whole line). Throws QuadratureError carrying the partial
// estimate when abs_tol is not met within max_depth.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace pdyn

namespace pdyn {

struct LogQuadratureResult {
  double log_value;  // log of the integral
  double rel_error;  // estimated relative error
};

// int_{-inf}^{inf} exp(log_f(x)) dx for a unimodal integrand, evaluated in
// the shifted and scaled variable x = center + scale * t and normalised by
// exp(log_f(center)) so that integrals far outside the double range work.
LogQuadratureResult integrate_log_peaked(const std::function<double(double)>& log_f, double center, double scale,
                                         double rel_tol = 1e-12, unsigned max_depth = 18);

}  // namespace pdyn
