#include "pdyn/specialfn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "pdyn/errors.hpp"
#include "pdyn/quadrature.hpp"

namespace pdyn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_legendre_domain(double x) {
  if (std::isnan(x) || std::fabs(x) < 1.0)
    throw DomainError("legendre: |x| >= 1 required, got x = " + format_double(x));
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    Integer f = 1;
    for (int i = 0; i <= 170; ++i) {
      if (i > 0) f *= i;
      long e = 0;
      double m = mpz_get_d_2exp(&e, f.get_mpz_t());
      t[static_cast<std::size_t>(i)] = std::log(m) + static_cast<double>(e) * std::numbers::ln2;
    }
    return t;
  }();
  if (n <= 170) return table[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double LegendreEval::value() const { return sign * std::exp(log_abs); }

LegendreSequence legendre_sequence(int max_n, double x) {
  if (max_n < 0) throw DomainError("legendre: degree must be non-negative");
  if (!(x >= 1.0)) throw DomainError("legendre_sequence: x >= 1 required, got x = " + format_double(x));
  LegendreSequence seq{x, std::vector<double>(static_cast<std::size_t>(max_n) + 1, 0.0),
                       std::vector<double>(static_cast<std::size_t>(max_n) + 1, kNaN)};
  if (max_n >= 1) {
    seq.ratio[1] = x;
    seq.log_abs[1] = std::log(x);
  }
  for (int n = 1; n < max_n; ++n) {
    double r = seq.ratio[static_cast<std::size_t>(n)];
    double next = ((2.0 * n + 1.0) * x - n / r) / (n + 1.0);
    seq.ratio[static_cast<std::size_t>(n) + 1] = next;
    seq.log_abs[static_cast<std::size_t>(n) + 1] = seq.log_abs[static_cast<std::size_t>(n)] + std::log(next);
  }
  return seq;
}

LegendreEval legendre_P(int n, double x) {
  check_legendre_domain(x);
  if (n < 0) throw DomainError("legendre: degree must be non-negative");
  const bool flip = x < 0;
  LegendreSequence seq = legendre_sequence(n, std::fabs(x));
  LegendreEval out{n, x, seq.log_abs[static_cast<std::size_t>(n)], 1, seq.ratio[static_cast<std::size_t>(n)]};
  if (flip && (n % 2 == 1)) out.sign = -1;
  if (flip && n >= 1) out.ratio = -out.ratio;
  return out;
}

double legendre_P_plain(int n, double x) {
  if (n < 0) throw DomainError("legendre: degree must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

Rational legendre_leading_coefficient(int n) {
  if (n < 0) throw DomainError("legendre: degree must be non-negative");
  Integer two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(n));
  Rational b(binomial(2UL * static_cast<unsigned long>(n), static_cast<unsigned long>(n)), two_pow);
  b.canonicalize();
  return b;
}

Rational turan_bound(int n) {
  if (n < 1) throw DomainError("turan: n >= 1 required");
  Rational a((n + 1) * (n + 1), n * (n + 2));
  a.canonicalize();
  return a;
}

Rational turan_limit(int n) {
  if (n < 1) throw DomainError("turan: n >= 1 required");
  Rational l(n * (2 * n + 1), (n + 1) * (2 * n - 1));
  l.canonicalize();
  return l;
}

TuranRatio turan_ratio(int n, double x) {
  if (n < 1) throw DomainError("turan: n >= 1 required");
  if (std::isnan(x) || !(std::fabs(x) > 1.0)) throw DomainError("turan: |x| > 1 required, got " + format_double(x));
  // R_n is even in x.
  LegendreSequence seq = legendre_sequence(n + 1, std::fabs(x));
  double r = seq.ratio[static_cast<std::size_t>(n) + 1] / seq.ratio[static_cast<std::size_t>(n)];
  return {r, turan_bound(n), turan_limit(n)};
}

std::vector<Rational> s_n_exact(const Rational& y, const Rational& z, int max_n) {
  if (y < 0 || z < 0 || (y == 0 && z == 0)) throw DomainError("S_n: y, z >= 0 and not both zero required");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(std::max(max_n, 0)));
  for (int n = 1; n <= max_n; ++n) {
    // Horner in y/z is awkward with zeros; build the powers directly.
    std::vector<Rational> ypow(static_cast<std::size_t>(n) + 1), zpow(static_cast<std::size_t>(n) + 1);
    ypow[0] = 1;
    zpow[0] = 1;
    for (int k = 1; k <= n; ++k) {
      ypow[static_cast<std::size_t>(k)] = ypow[static_cast<std::size_t>(k) - 1] * y;
      zpow[static_cast<std::size_t>(k)] = zpow[static_cast<std::size_t>(k) - 1] * z;
    }
    Rational sum = 0;
    for (int k = 0; k <= n; ++k) {
      Integer c = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
      sum += Rational(c * c) * ypow[static_cast<std::size_t>(k)] * zpow[static_cast<std::size_t>(n - k)];
    }
    out.push_back(Rational(n + 1) * sum);
  }
  return out;
}

double s_n_log_direct(double y, double z, int n) {
  if (y < 0 || z < 0 || (y == 0 && z == 0)) throw DomainError("S_n: y, z >= 0 and not both zero required");
  const double ly = y > 0 ? std::log(y) : -INFINITY;
  const double lz = z > 0 ? std::log(z) : -INFINITY;
  double m = -INFINITY;
  std::vector<double> terms(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    double lc = log_factorial(n) - log_factorial(k) - log_factorial(n - k);
    double t = 2.0 * lc + (k == 0 ? 0.0 : k * ly) + (k == n ? 0.0 : (n - k) * lz);
    terms[static_cast<std::size_t>(k)] = t;
    m = std::max(m, t);
  }
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return std::log(n + 1.0) + m + std::log(s);
}

std::vector<double> s_n_log(double y, double z, int max_n) {
  if (y < 0 || z < 0 || (y == 0 && z == 0)) throw DomainError("S_n: y, z >= 0 and not both zero required");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(max_n, 0)));
  if (y == z) {
    for (int n = 1; n <= max_n; ++n)
      out.push_back(n * std::log(y) + std::log(n + 1.0) + log_factorial(2 * n) - 2.0 * log_factorial(n));
    return out;
  }
  const double hi = std::max(y, z);
  const double lo = std::min(y, z);
  const double x = (hi + lo) / (hi - lo);
  if (x > 1e150) {
    for (int n = 1; n <= max_n; ++n) out.push_back(s_n_log_direct(y, z, n));
    return out;
  }
  LegendreSequence seq = legendre_sequence(max_n, x);
  const double ld = std::log(hi - lo);
  for (int n = 1; n <= max_n; ++n)
    out.push_back(n * ld + std::log(n + 1.0) + seq.log_abs[static_cast<std::size_t>(n)]);
  return out;
}

BesselHalfSeq::BesselHalfSeq(double theta, int max_n) : theta_(theta) {
  if (!(theta > 0) || !std::isfinite(theta)) throw DomainError("bessel: theta > 0 required");
  if (max_n < 0) throw DomainError("bessel: max order must be non-negative");
  log_k_.resize(static_cast<std::size_t>(max_n) + 2);
  rho_.resize(static_cast<std::size_t>(max_n) + 1);
  // K_{1/2}(t) = K_{-1/2}(t) = sqrt(pi / (2 t)) e^{-t}
  const double log_k0 = 0.5 * std::log(std::numbers::pi / (2.0 * theta)) - theta;
  log_k_[0] = log_k0;
  log_k_[1] = log_k0;
  rho_[0] = 1.0;
  for (int n = 0; n < max_n; ++n) {
    // k_{n+1} / k_n = (2n+1)/theta + rho_n
    double growth = (2.0 * n + 1.0) / theta + rho_[static_cast<std::size_t>(n)];
    rho_[static_cast<std::size_t>(n) + 1] = 1.0 / growth;
    log_k_[static_cast<std::size_t>(n) + 2] = log_k_[static_cast<std::size_t>(n) + 1] + std::log(growth);
  }
}

double BesselHalfSeq::k(int n) const { return std::exp(log_k(n)); }

BesselHalfSeq bessel_K_half(double theta, int max_n) { return BesselHalfSeq(theta, max_n); }

SeguraBounds segura_bounds(int n, double theta) {
  if (n < 2) throw DomainError("segura bounds: n >= 2 required");
  if (!(theta > 0)) throw DomainError("segura bounds: theta > 0 required");
  const double d = n - 1.5;
  return {theta / (n + 0.5 + std::sqrt(d * d + theta * theta)), theta};
}

double q_n_of_rho(int n, double theta, double rho) {
  if (n < 2) throw DomainError("Q_n: n >= 2 required");
  if (!(theta > 0)) throw DomainError("Q_n: theta > 0 required");
  if (!(rho >= 0.0 && rho <= theta)) throw DomainError("Q_n: rho must lie in [0, theta]");
  const double nd = n;
  const double first = (2.0 * nd * nd + 3.0 * nd + 1.0) / theta + 2.0 * nd + 1.0 + theta + (nd + 1.0 + theta) * rho;
  const double second = theta - (nd - theta) * rho;
  const double den = nd + theta + theta * rho;
  return nd * first * second / ((nd + 1.0) * den * den);
}

std::vector<Rational> bessel_ratios_exact(const Rational& theta, int max_n) {
  if (sgn(theta) <= 0) throw DomainError("bessel ratios: theta > 0 required");
  if (max_n < 1) return {};
  // p_n = k_n e^theta sqrt(2 theta / pi); p_{n+1} = p_{n-1} + (2n+1)/theta p_n.
  Rational prev = 1;
  Rational cur = 1 + 1 / theta;
  cur.canonicalize();
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(max_n));
  out.push_back(prev / cur);
  for (int n = 1; n < max_n; ++n) {
    Rational next = prev + (2 * n + 1) * cur / theta;
    next.canonicalize();
    prev = std::move(cur);
    cur = std::move(next);
    Rational r = prev / cur;
    r.canonicalize();
    out.push_back(std::move(r));
  }
  return out;
}

Rational q_n_of_rho_exact(int n, const Rational& theta, const Rational& rho) {
  if (n < 2) throw DomainError("Q_n: n >= 2 required");
  if (sgn(theta) <= 0) throw DomainError("Q_n: theta > 0 required");
  const Rational nd = n;
  Rational first = (2 * nd * nd + 3 * nd + 1) / theta + 2 * nd + 1 + theta + (nd + 1 + theta) * rho;
  Rational second = theta - (nd - theta) * rho;
  Rational den = nd + theta + theta * rho;
  Rational q = nd * first * second / ((nd + 1) * den * den);
  q.canonicalize();
  return q;
}

bool segura_bracket_exact(int n, const Rational& theta, const Rational& rho) {
  if (n < 2) throw DomainError("segura bounds: n >= 2 required");
  if (sgn(rho) <= 0 || rho > theta) return false;
  // eta_n < rho  <=>  theta/rho - n - 1/2 < sqrt((n - 3/2)^2 + theta^2).
  Rational lhs = theta / rho - n - Rational(1, 2);
  if (sgn(lhs) < 0) return true;
  Rational d = n - Rational(3, 2);
  return lhs * lhs < d * d + theta * theta;
}

double integral_I_quadrature(int n, int m, double theta) {
  if (n < 0 || m < 0) throw DomainError("I_{n,m}: n, m >= 0 required");
  if (!(theta > 0)) throw DomainError("I_{n,m}: theta > 0 required");
  // u = e^v: integrand u^(n+1) (u+1)^m e^{-2 theta u} in v.
  auto log_f = [=](double v) {
    double u = std::exp(v);
    if (u == 0.0 || !std::isfinite(u)) return -std::numeric_limits<double>::infinity();
    return (n + 1.0) * v + m * std::log1p(u) - 2.0 * theta * u;
  };
  // Peak: (n+1) + m u/(u+1) = 2 theta u.
  double lo = 0.0;
  double hi = (n + 1.0 + m) / (2.0 * theta) + 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double g = (n + 1.0) + m * mid / (mid + 1.0) - 2.0 * theta * mid;
    (g > 0 ? lo : hi) = mid;
  }
  double peak = 0.5 * (lo + hi);
  auto r = integrate_log_peaked(log_f, std::log(peak), 1.0 / std::sqrt(n + 1.0), 1e-11);
  return std::exp(r.log_value);
}

double integral_I_nn(int n, double theta, const BesselHalfSeq& k) {
  if (n < 0) throw DomainError("I_{n,n}: n >= 0 required");
  double log_v = theta - 0.5 * std::log(std::numbers::pi) + log_factorial(n) -
                 (n + 0.5) * std::log(2.0 * theta) + k.log_k(n);
  return std::exp(log_v);
}

double integral_I_shifted(int n, double theta, const BesselHalfSeq& k) {
  if (n < 1) throw DomainError("I_{n-1,n+1}: n >= 1 required");
  return (n + theta) / n * integral_I_nn(n, theta, k) + 0.5 * integral_I_nn(n - 1, theta, k);
}

}  // namespace pdyn
