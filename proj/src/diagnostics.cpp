#include "pdyn/diagnostics.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "pdyn/errors.hpp"

namespace pdyn {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Log-space margin above which exact sequences are decided from their logs.
constexpr double kExactFilter = 1e-9;

// b^2 < a c for positive rationals, by integer cross-multiplication.
bool exact_square_below_product(const Rational& b, const Rational& a, const Rational& c) {
  Integer lhs = b.get_num() * b.get_num();
  lhs *= a.get_den();
  lhs *= c.get_den();
  Integer rhs = a.get_num() * c.get_num();
  rhs *= b.get_den();
  rhs *= b.get_den();
  return lhs < rhs;
}

void check_positive_range(const PsiSequence& seq) {
  if (seq.last_n() < 1) throw DomainError("diagnostics need psi(1)");
}

// Indices of the first element of each run of equal values on [1, N].
std::vector<int> run_starts(const PsiSequence& seq, double tie_tol) {
  std::vector<int> starts;
  for (int n = 1; n <= seq.last_n(); ++n)
    if (starts.empty() || compare_psi(seq, n, starts.back(), tie_tol) != 0) starts.push_back(n);
  return starts;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  auto tol = [](double a, double b) { return std::fabs(b - a) <= 1e-12 * std::max(1.0, std::fabs(a)); };
  auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol);
  return 0.5 * (a + b);
}

}  // namespace

int compare_psi(const PsiSequence& seq, int a, int b, double tie_tol) {
  double la = seq.log_value(a);
  double lb = seq.log_value(b);
  if (seq.is_exact()) {
    // Logs of exact values are accurate to a few ulps; only near-ties need
    // the (expensive) exact comparison.
    if (std::fabs(la - lb) > kExactFilter) return la > lb ? 1 : -1;
    int c = cmp(seq.exact_value(a), seq.exact_value(b));
    return (c > 0) - (c < 0);
  }
  if (std::fabs(la - lb) <= tie_tol) return 0;
  return la > lb ? 1 : -1;
}

std::vector<int> detect_modes(const PsiSequence& seq, double tie_tol) {
  check_positive_range(seq);
  std::vector<int> runs = run_starts(seq, tie_tol);
  std::vector<int> modes;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    bool above_left = i == 0 || compare_psi(seq, runs[i], runs[i - 1], tie_tol) > 0;
    bool has_right = i + 1 < runs.size();
    if (i > 0 && !has_right) break;  // right boundary excluded
    bool above_right = !has_right || compare_psi(seq, runs[i], runs[i + 1], tie_tol) > 0;
    if (above_left && above_right) modes.push_back(runs[i]);
  }
  return modes;
}

std::vector<int> detect_minima(const PsiSequence& seq, double tie_tol) {
  check_positive_range(seq);
  std::vector<int> runs = run_starts(seq, tie_tol);
  std::vector<int> minima;
  for (std::size_t i = 1; i + 1 < runs.size(); ++i)
    if (compare_psi(seq, runs[i], runs[i - 1], tie_tol) < 0 && compare_psi(seq, runs[i], runs[i + 1], tie_tol) < 0)
      minima.push_back(runs[i]);
  return minima;
}

std::vector<int> logconcavity_scan(const PsiSequence& seq) {
  check_positive_range(seq);
  std::vector<int> out;
  for (int n = std::max(2, seq.first_n + 1); n < seq.last_n(); ++n) {
    if (seq.is_exact()) {
      const double gap = seq.log_value(n - 1) + seq.log_value(n + 1) - 2.0 * seq.log_value(n);
      if (std::fabs(gap) > kExactFilter) {
        if (gap > 0) out.push_back(n);
        continue;
      }
      if (exact_square_below_product(seq.exact_value(n), seq.exact_value(n - 1), seq.exact_value(n + 1))) out.push_back(n);
      continue;
    }
    double a = seq.log_value(n - 1);
    double b = seq.log_value(n);
    double c = seq.log_value(n + 1);
    double band = 8.0 * kEps * std::max({std::fabs(a), std::fabs(b), std::fabs(c), 1.0});
    if (a + c - 2.0 * b > band) out.push_back(n);
  }
  return out;
}

std::optional<int> eventual_decrease_index(const PsiSequence& seq, double tie_tol) {
  check_positive_range(seq);
  const int last = seq.last_n();
  if (last < 2) return std::nullopt;
  int n = last;
  while (n > 1 && compare_psi(seq, n - 1, n, tie_tol) > 0) --n;
  if (n == last) return std::nullopt;
  return n;
}

double asymptotic_j(const Family& family, double theta) {
  return std::sqrt(fisher_information(family, theta) / (2.0 * std::numbers::pi));
}

double asymptotic_log_psi(const Family& family, const Prior& prior, double theta0, double theta1, double n) {
  const auto* named = std::get_if<NamedPrior>(&prior);
  if (named == nullptr) throw UnsupportedError("asymptotics require continuous prior");
  family.check_theta(theta0);
  family.check_theta(theta1);
  GeometricAverage g = theta2_and_w(family, theta0, theta1);
  double log_ratio = 0.0;
  if (theta0 != theta1)
    log_ratio = named_prior_log_density(*named, theta0) - named_prior_log_density(*named, g.theta2);
  return log_ratio + 0.5 * std::log(fisher_information(family, g.theta2)) - std::log(2.0) -
         0.5 * std::log(std::numbers::pi) + 0.5 * std::log(n) + n * std::log(g.w);
}

double asymptotic_psi(const Family& family, const Prior& prior, double theta0, double theta1, double n) {
  return std::exp(asymptotic_log_psi(family, prior, theta0, theta1, n));
}

double normal_gamma(double n, double theta, double sigma) {
  const double s2 = sigma * sigma;
  const double s4 = s2 * s2;
  return (s4 - 2.0 * n * n) * (2.0 * n + s2) / ((n + s2) * (n + s2)) - 4.0 * theta * theta * s2;
}

std::optional<double> normal_gamma_root(double theta, double sigma) {
  if (!(sigma > 0)) throw DomainError("sigma must be positive");
  auto g = [&](double n) { return normal_gamma(n, theta, sigma); };
  if (g(0.0) <= 0.0) return std::nullopt;
  double hi = 1.0;
  while (g(hi) > 0.0) hi *= 2.0;
  return bisect(g, 0.0, hi);
}

double normal_xi_prime(double n, double theta, double sigma) {
  const double s2 = sigma * sigma;
  const double m = 2.0 * n + s2;
  return n / ((n + s2) * m) + theta * theta * s2 / (m * m);
}

std::vector<CriticalPoint> normal_critical_points(double theta0, double theta1, double sigma) {
  if (!(sigma > 0)) throw DomainError("sigma must be positive");
  const double theta = 0.5 * (theta0 + theta1);
  const double d = theta0 - theta1;
  const double log_w = -d * d / (4.0 * sigma * sigma);
  auto f = [&](double n) { return normal_xi_prime(n, theta, sigma) + log_w; };
  constexpr double lo = 1e-6;
  constexpr double hi = 1e9;
  std::vector<CriticalPoint> out;
  if (log_w == 0.0) return out;  // psi increases; no critical points
  // f increases while gamma > 0 and decreases afterwards.
  double peak = lo;
  if (auto root = normal_gamma_root(theta, sigma)) peak = std::clamp(*root, lo, hi);
  if (peak > lo && f(lo) < 0.0 && f(peak) > 0.0) out.push_back({bisect(f, lo, peak), CriticalKind::Min});
  if (f(peak) > 0.0 && f(hi) < 0.0) out.push_back({bisect(f, peak, hi), CriticalKind::Max});
  return out;
}

std::optional<int> log_convex_prefix_end(const std::vector<int>& violations) {
  if (violations.empty() || violations.front() != 2) return std::nullopt;
  int end = 2;
  for (std::size_t i = 1; i < violations.size() && violations[i] == end + 1; ++i) end = violations[i];
  return end;
}

nlohmann::ordered_json DiagnosticsReport::to_json() const {
  nlohmann::ordered_json j;
  j["horizon"] = horizon;
  j["modes"] = modes;
  j["minima"] = minima;
  j["logconcavity_violations"] = logconcavity_violations;
  j["log_convex_prefix_end"] = log_convex_prefix_end ? nlohmann::ordered_json(*log_convex_prefix_end) : nullptr;
  j["eventual_decrease_index"] =
      eventual_decrease_index ? nlohmann::ordered_json(*eventual_decrease_index) : nlohmann::ordered_json("not reached");
  nlohmann::ordered_json ratios = nlohmann::ordered_json::array();
  for (const auto& [n, r] : asymptotic_ratios) ratios.push_back({{"n", n}, {"ratio", format_double(r)}});
  j["asymptotic_ratios"] = ratios;
  j["unimodality_implication"] = unimodality_implication;
  return j;
}

DiagnosticsReport diagnose(const PsiSequence& seq, const Family* family, const Prior* prior, double theta0,
                           double theta1) {
  DiagnosticsReport r;
  r.horizon = seq.last_n();
  r.modes = detect_modes(seq);
  r.minima = detect_minima(seq);
  r.logconcavity_violations = logconcavity_scan(seq);
  r.log_convex_prefix_end = pdyn::log_convex_prefix_end(r.logconcavity_violations);
  r.eventual_decrease_index = eventual_decrease_index(seq);
  r.unimodality_implication = !r.logconcavity_violations.empty() || r.modes.size() <= 1;
  if (family != nullptr && prior != nullptr && std::holds_alternative<NamedPrior>(*prior)) {
    std::vector<int> ns;
    for (int scale = 1; scale <= r.horizon; scale *= 10)
      for (int k : {1, 2, 5})
        if (k * scale <= r.horizon) ns.push_back(k * scale);
    if (ns.empty() || ns.back() != r.horizon) ns.push_back(r.horizon);
    for (int n : ns)
      r.asymptotic_ratios.emplace_back(
          n, std::exp(seq.log_value(n) - asymptotic_log_psi(*family, *prior, theta0, theta1, n)));
  }
  return r;
}

}  // namespace pdyn
