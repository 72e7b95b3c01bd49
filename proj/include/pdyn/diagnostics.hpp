#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pdyn/families.hpp"
#include "pdyn/priors.hpp"
#include "pdyn/psi.hpp"

namespace pdyn {

// Relative tie tolerance for float sequences: values whose logs differ by at
// most this much compare equal.
inline constexpr double kFloatTieTolerance = 1e-13;

// Three-way comparison of psi(a) and psi(b): exact for rational sequences,
// tie-tolerant in log space otherwise.
int compare_psi(const PsiSequence& seq, int a, int b, double tie_tol = kFloatTieTolerance);

// Local maxima on n in [1, N]. Runs of equal values are collapsed to their
// first index; a run is a mode when it is strictly above both neighbours.
// The left boundary counts when psi(1) >= psi(2); the right boundary never
// counts.
std::vector<int> detect_modes(const PsiSequence& seq, double tie_tol = kFloatTieTolerance);
// Interior local minima under the mirrored convention.
std::vector<int> detect_minima(const PsiSequence& seq, double tie_tol = kFloatTieTolerance);

// All n in [2, N-1] with psi(n)^2 < psi(n-1) psi(n+1). Exact sequences are
// compared exactly. Float sequences only report a violation when the second
// difference of log psi exceeds a rounding band of a few ulps of the logs.
std::vector<int> logconcavity_scan(const PsiSequence& seq);

// Smallest n such that psi is strictly decreasing on [n, N]; nullopt when
// psi(N-1) <= psi(N).
std::optional<int> eventual_decrease_index(const PsiSequence& seq, double tie_tol = kFloatTieTolerance);

// J(theta) = sqrt(I(theta) / (2 pi)).
double asymptotic_j(const Family& family, double theta);

// Large-n equivalent of psi(n):
//   diagonal      sqrt(I(theta0)) / (2 sqrt(pi)) sqrt(n)
//   off-diagonal  pi(theta0)/pi(theta2) sqrt(I(theta2)) / (2 sqrt(pi)) sqrt(n) w^n
// Throws UnsupportedError for discrete priors.
double asymptotic_log_psi(const Family& family, const Prior& prior, double theta0, double theta1, double n);
double asymptotic_psi(const Family& family, const Prior& prior, double theta0, double theta1, double n);

// gamma(n) for the normal-normal model; its sign is the sign of xi''(n).
double normal_gamma(double n, double theta, double sigma);
// Root of gamma on (0, inf); nullopt when gamma(0+) <= 0.
std::optional<double> normal_gamma_root(double theta, double sigma);
// xi'(n), xi(n) = log psi_{theta,theta}(n) with continuous n.
double normal_xi_prime(double n, double theta, double sigma);

enum class CriticalKind { Min, Max };
struct CriticalPoint {
  double n;
  CriticalKind kind;
};
// Roots of xi'(n) + log w = 0 on [1e-6, 1e9], at most two.
std::vector<CriticalPoint> normal_critical_points(double theta0, double theta1, double sigma);

// Longest run [2, k] of log-concavity violations; nullopt when n = 2 is fine.
std::optional<int> log_convex_prefix_end(const std::vector<int>& violations);

struct DiagnosticsReport {
  int horizon = 0;
  std::vector<int> modes;
  std::vector<int> minima;
  std::vector<int> logconcavity_violations;
  std::optional<int> log_convex_prefix_end;
  std::optional<int> eventual_decrease_index;
  std::vector<std::pair<int, double>> asymptotic_ratios;  // n -> psi(n) / psi_asym(n)
  bool unimodality_implication = true;  // no violations implies at most one mode

  nlohmann::ordered_json to_json() const;
};

// Asymptotic ratios are filled when the scenario has a continuous prior;
// they are sampled at 1, 2, 5, 10, 20, 50, ... and at the horizon.
DiagnosticsReport diagnose(const PsiSequence& seq, const Family* family = nullptr, const Prior* prior = nullptr,
                           double theta0 = 0.0, double theta1 = 0.0);

}  // namespace pdyn
