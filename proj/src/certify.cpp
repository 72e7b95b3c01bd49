#include "pdyn/certify.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>

#include "pdyn/rational.hpp"

namespace pdyn {

namespace {

BiPoly th(long c, int power) { return BiPoly::constant(c) * BiPoly::theta().pow(static_cast<unsigned>(power)); }
BiPoly mp(int power) { return BiPoly::m().pow(static_cast<unsigned>(power)); }

bool all_coefficients_nonnegative(const UniPoly& p) {
  for (const auto& c : p.coefficients())
    if (c < 0) return false;
  return true;
}

// q >= 0 on the whole real line for a quadratic with positive leading
// coefficient and non-positive discriminant.
bool nonnegative_quadratic(const UniPoly& q) {
  if (q.degree() != 2 || q.coefficient(2) <= 0) return false;
  Integer disc = q.coefficient(1) * q.coefficient(1) - 4 * q.coefficient(2) * q.coefficient(0);
  return disc <= 0;
}

struct Claim {
  std::optional<UniPoly> lower_bound;
  std::optional<double> min;
  std::optional<double> argmin;
};

CoefficientReport build_report(const std::string& name, const UniPoly& p, const Claim& claim) {
  CoefficientReport r;
  r.name = name;
  r.computed = p;
  r.positive_exact = positive_on_nonnegative_axis(p);
  NumericMinimum nm = minimize_on_interval(p);
  r.numeric_min = nm.value;
  r.numeric_argmin = nm.argmin;
  if (p.degree() <= 0) {
    r.argument = PositivityArgument::Constant;
  } else if (claim.lower_bound) {
    r.argument = PositivityArgument::LowerBound;
    r.lower_bound = claim.lower_bound;
    UniPoly diff = p - *claim.lower_bound;
    // Strict inequality needs a positive constant term in the difference.
    r.lower_bound_ok = all_coefficients_nonnegative(diff) && diff.coefficient(0) > 0 &&
                       nonnegative_quadratic(*claim.lower_bound);
  } else {
    r.argument = PositivityArgument::Minimum;
    r.claimed_min = claim.min;
    r.claimed_argmin = claim.argmin;
    if (claim.min && claim.argmin)
      r.minimum_ok = std::fabs(nm.value - *claim.min) <= 1.0 && std::fabs(nm.argmin - *claim.argmin) <= 0.05;
  }
  return r;
}

std::string argument_name(PositivityArgument a) {
  switch (a) {
    case PositivityArgument::Constant:
      return "constant";
    case PositivityArgument::LowerBound:
      return "lower_bound";
    case PositivityArgument::Minimum:
      return "minimum";
  }
  return "";
}

nlohmann::ordered_json report_json(const CoefficientReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["polynomial"] = r.computed.to_string();
  if (r.published) {
    j["published"] = r.published->to_string();
    j["matches_published"] = r.matches_published;
  }
  j["argument"] = argument_name(r.argument);
  if (r.lower_bound) {
    j["lower_bound"] = r.lower_bound->to_string();
    j["lower_bound_ok"] = r.lower_bound_ok;
  }
  if (r.claimed_min) j["claimed_min"] = format_double(*r.claimed_min);
  if (r.claimed_argmin) j["claimed_argmin"] = format_double(*r.claimed_argmin);
  j["numeric_min"] = format_double(r.numeric_min);
  j["numeric_argmin"] = format_double(r.numeric_argmin);
  j["minimum_ok"] = r.minimum_ok;
  j["positive_exact"] = r.positive_exact;
  j["passed"] = r.passed();
  return j;
}

}  // namespace

bool CoefficientReport::passed() const {
  return matches_published && positive_exact && lower_bound_ok && minimum_ok;
}

bool A4Certification::passed() const {
  for (const auto& r : a_coeffs)
    if (!r.passed()) return false;
  for (const auto& r : e_coeffs)
    if (!r.passed()) return false;
  return true;
}

nlohmann::ordered_json A4Certification::to_json() const {
  nlohmann::ordered_json j;
  j["A"] = A.to_string();
  j["B"] = B.to_string();
  j["C"] = C.to_string();
  j["E"] = E.to_string();
  j["a"] = nlohmann::ordered_json::array();
  for (const auto& r : a_coeffs) j["a"].push_back(report_json(r));
  j["e"] = nlohmann::ordered_json::array();
  for (const auto& r : e_coeffs) j["e"].push_back(report_json(r));
  j["passed"] = passed();
  return j;
}

BiPoly a4_polynomial_A() {
  return th(8, 0) * mp(4) + th(72, 0) * mp(3) + (th(4, 2) - th(16, 1) + th(230, 0)) * mp(2) +
         (th(8, 3) + th(4, 2) - th(56, 1) + th(302, 0)) * mp(1) +
         (th(8, 4) + th(20, 3) + th(2, 2) - th(48, 1) + th(132, 0));
}

BiPoly a4_polynomial_B() {
  return th(4, 0) * mp(3) + th(30, 0) * mp(2) + (th(-4, 2) + th(74, 0)) * mp(1) +
         (th(-4, 3) - th(10, 2) + th(60, 0));
}

BiPoly a4_polynomial_C() { return th(4, 0) * mp(2) + th(4, 0) * mp(1) + (th(4, 2) + th(1, 0)); }

std::vector<UniPoly> a4_published_e() {
  return {
      UniPoly{128},
      UniPoly{1920, -256, 128},
      UniPoly{12064, -3200, 1088, 256},
      UniPoly{41024, -16192, 2816, 2432, 208},
      UniPoly{81184, -42336, -416, 9344, 1824, 64},
      UniPoly{92928, -60128, -13408, 17664, 6208, 480},
      UniPoly{56448, -43776, -21120, 16096, 9200, 1312},
      UniPoly{13824, -12672, -10368, 5568, 4896, 1152, 16},
  };
}

NumericMinimum minimize_on_interval(const UniPoly& p, double upper) {
  if (p.degree() <= 0) return {0.0, p.eval(0.0)};
  const int steps = static_cast<int>(upper * 1000.0);
  int best = 0;
  double best_value = p.eval(0.0);
  for (int i = 1; i <= steps; ++i) {
    double v = p.eval(upper * i / steps);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = upper * std::max(best - 1, 0) / steps;
  double hi = upper * std::min(best + 1, steps) / steps;
  auto f = [&](double t) { return p.eval(t); };
  auto [x, v] = boost::math::tools::brent_find_minima(f, lo, hi, 52);
  if (best_value < v) return {upper * best / steps, best_value};
  return {x, v};
}

A4Certification certify_appendix_a4() {
  A4Certification cert;
  cert.A = a4_polynomial_A();
  cert.B = a4_polynomial_B();
  cert.C = a4_polynomial_C();
  cert.E = cert.A * cert.A - cert.B * cert.B * cert.C;

  const std::vector<Claim> a_claims = {
      {},
      {},
      {UniPoly{16, -16, 4}, {}, {}},
      {UniPoly{196, -56, 4}, {}, {}},
      {{}, 108.0, 0.73},
  };
  for (int i = 4; i >= 0; --i)
    cert.a_coeffs.push_back(build_report("a" + std::to_string(i), cert.A.coefficient_in_m(i),
                                         a_claims[static_cast<std::size_t>(4 - i)]));

  const std::vector<Claim> e_claims = {
      {},
      {UniPoly{128, -256, 128}, {}, {}},
      {UniPoly{3200, -3200, 800}, {}, {}},
      {UniPoly{40000, -17000, 2000}, {}, {}},
      {{}, 49317.0, 1.09},
      {{}, 43609.0, 1.04},
      {{}, 18075.0, 0.97},
      {{}, 1981.0, 0.90},
  };
  const std::vector<UniPoly> published = a4_published_e();
  if (cert.E.degree_m() != 7)
    throw CertificationError("E has degree " + std::to_string(cert.E.degree_m()) + " in m, expected 7");
  for (int i = 7; i >= 0; --i) {
    const std::size_t idx = static_cast<std::size_t>(7 - i);
    UniPoly computed = cert.E.coefficient_in_m(i);
    if (!(computed == published[idx]))
      throw CertificationError("coefficient e" + std::to_string(i) + " mismatch: expanded " + computed.to_string() +
                               ", tabulated " + published[idx].to_string());
    CoefficientReport r = build_report("e" + std::to_string(i), computed, e_claims[idx]);
    r.published = published[idx];
    r.matches_published = true;
    cert.e_coeffs.push_back(std::move(r));
  }
  return cert;
}

}  // namespace pdyn
