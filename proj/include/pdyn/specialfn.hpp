#pragma once

#include <vector>

#include "pdyn/rational.hpp"

namespace pdyn {

// ---------------------------------------------------------------------------
// Legendre polynomials on |x| >= 1.
//
// Values are carried as (log|P_n|, sign) together with the first-order ratio
// P_n / P_{n-1}. For x >= 1 the three-term recurrence
//   (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}
// becomes r_{n+1} = ((2n+1) x - n / r_n) / (n+1) with r_1 = x, which stays
// positive and never overflows.
// ---------------------------------------------------------------------------

struct LegendreEval {
  int n;
  double x;
  double log_abs;  // log |P_n(x)|
  int sign;        // +1 or -1
  double ratio;    // P_n / P_{n-1}; NaN for n = 0

  double value() const;
};

// Throws DomainError for |x| < 1. Negative x uses P_n(-x) = (-1)^n P_n(x).
LegendreEval legendre_P(int n, double x);

// All of P_0..P_N at a fixed x >= 1: log_abs[n] and ratio[n] (ratio[0] unused).
struct LegendreSequence {
  double x;
  std::vector<double> log_abs;
  std::vector<double> ratio;
};
LegendreSequence legendre_sequence(int max_n, double x);

// Plain three-term recurrence for any real x. Only used for spot checks inside
// [-1, 1]; no overflow protection.
double legendre_P_plain(int n, double x);

// Leading coefficient b_n = C(2n, n) / 2^n.
Rational legendre_leading_coefficient(int n);

struct TuranRatio {
  double ratio;    // R_n(x) = P_{n-1} P_{n+1} / P_n^2
  Rational bound;  // a_n = (n+1)^2 / (n (n+2))
  Rational limit;  // R_n(infinity) = n (2n+1) / ((n+1)(2n-1))
};

// n >= 1 and |x| > 1.
TuranRatio turan_ratio(int n, double x);
Rational turan_bound(int n);
Rational turan_limit(int n);

// ---------------------------------------------------------------------------
// S_n(y, z) = (n+1) sum_k C(n,k)^2 y^k z^(n-k)
// ---------------------------------------------------------------------------

// Exact values for n = 1..max_n (index n-1).
std::vector<Rational> s_n_exact(const Rational& y, const Rational& z, int max_n);

// log S_n for n = 1..max_n (index n-1). Uses the Legendre form
// S_n = (y-z)^n (n+1) P_n((y+z)/(y-z)) when y != z and the central binomial
// closed form when y == z.
std::vector<double> s_n_log(double y, double z, int max_n);

// Direct log-space binomial sum; O(n) per term. Independent of the Legendre route.
double s_n_log_direct(double y, double z, int n);

// ---------------------------------------------------------------------------
// Modified Bessel functions of the second kind at half-integer order,
// k_n = K_{n+1/2}(theta), via k_{-1} = k_0 = sqrt(pi/(2 theta)) e^{-theta}
// and the upward recursion k_{n+1} = ((2n+1)/theta) k_n + k_{n-1}, which is
// stable because K_nu grows with nu. Stored as log k_n and
// rho_n = k_{n-1} / k_n.
// ---------------------------------------------------------------------------

class BesselHalfSeq {
 public:
  BesselHalfSeq(double theta, int max_n);

  double theta() const { return theta_; }
  int max_n() const { return static_cast<int>(rho_.size()) - 1; }
  // n in [-1, max_n]
  double log_k(int n) const { return log_k_.at(static_cast<std::size_t>(n + 1)); }
  double k(int n) const;
  // n in [0, max_n]
  double rho(int n) const { return rho_.at(static_cast<std::size_t>(n)); }

 private:
  double theta_;
  std::vector<double> log_k_;
  std::vector<double> rho_;
};

// Throws DomainError for theta <= 0 or max_n < 0.
BesselHalfSeq bessel_K_half(double theta, int max_n);

// Bracket eta_n < rho_n <= theta for the Bessel ratio (n >= 2).
struct SeguraBounds {
  double eta;
  double upper;
};
SeguraBounds segura_bounds(int n, double theta);

// psi(n-1) psi(n+1) / psi(n)^2 for the exponential-exponential model written
// as a function of rho = rho_n.
double q_n_of_rho(int n, double theta, double rho);

// Exact rho_n = K_{n-1/2}/K_{n+1/2} for rational theta: the half-integer
// Bessel functions share the factor sqrt(pi/(2 theta)) e^-theta, leaving a
// ratio of polynomials in 1/theta. Returns rho_1 .. rho_max_n.
std::vector<Rational> bessel_ratios_exact(const Rational& theta, int max_n);
Rational q_n_of_rho_exact(int n, const Rational& theta, const Rational& rho);
// eta_n < rho <= theta decided without rounding.
bool segura_bracket_exact(int n, const Rational& theta, const Rational& rho);

// I_{n,m} = int_0^inf u^n (u+1)^m e^{-2 theta u} du by adaptive quadrature.
double integral_I_quadrature(int n, int m, double theta);
// I_{n,n} = e^theta / sqrt(pi) * n! / (2 theta)^(n+1/2) * k_n
double integral_I_nn(int n, double theta, const BesselHalfSeq& k);
// I_{n-1,n+1} = ((n+theta)/n) I_{n,n} + I_{n-1,n-1} / 2, n >= 1
double integral_I_shifted(int n, double theta, const BesselHalfSeq& k);

// log n!, exact integer factorial up to 170 and lgamma beyond.
double log_factorial(int n);

}  // namespace pdyn
