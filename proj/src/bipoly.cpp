#include "pdyn/bipoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdyn/errors.hpp"

namespace pdyn {

namespace {

using RatPoly = std::vector<Rational>;  // ascending, trimmed

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly remainder(RatPoly num, const RatPoly& den) {
  const std::size_t dd = den.size() - 1;
  while (!num.empty() && num.size() - 1 >= dd) {
    Rational factor = num.back() / den.back();
    std::size_t shift = num.size() - 1 - dd;
    for (std::size_t i = 0; i <= dd; ++i) num[shift + i] -= factor * den[i];
    num.pop_back();  // leading term cancels exactly
    trim(num);
  }
  return num;
}

Rational eval_rat(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

void append_monomial(std::ostringstream& out, bool first, const Integer& c, const std::string& body) {
  Integer mag = abs(c);
  if (first) {
    if (c < 0) out << "-";
  } else {
    out << (c < 0 ? " - " : " + ");
  }
  if (body.empty()) {
    out << mag.get_str();
  } else {
    if (mag != 1) out << mag.get_str() << "*";
    out << body;
  }
}

std::string power_str(const std::string& var, int e) {
  if (e == 0) return "";
  if (e == 1) return var;
  return var + "^" + std::to_string(e);
}

}  // namespace

UniPoly::UniPoly(std::initializer_list<long> ascending) {
  for (long c : ascending) coeffs_.emplace_back(c);
  trim();
}

UniPoly::UniPoly(std::vector<Integer> ascending) : coeffs_(std::move(ascending)) { trim(); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer UniPoly::coefficient(int power) const {
  if (power < 0 || power >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(power)];
}

double UniPoly::eval(double theta) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * theta + it->get_d();
  return acc;
}

Rational UniPoly::eval(const Rational& theta) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * theta + Rational(*it);
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<Integer> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return UniPoly(std::move(d));
}

std::string UniPoly::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int e = degree(); e >= 0; --e) {
    const Integer& c = coeffs_[static_cast<std::size_t>(e)];
    if (c == 0) continue;
    append_monomial(out, first, c, power_str(var, e));
    first = false;
  }
  return out.str();
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return UniPoly(std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
  return UniPoly(std::move(out));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(out));
}

int count_roots_above(const UniPoly& p, const Rational& a) {
  if (p.is_zero()) throw DomainError("sturm: zero polynomial");
  std::vector<RatPoly> chain;
  RatPoly p0(p.coefficients().begin(), p.coefficients().end());
  UniPoly dp = p.derivative();
  RatPoly p1(dp.coefficients().begin(), dp.coefficients().end());
  chain.push_back(p0);
  if (!p1.empty()) chain.push_back(p1);
  while (chain.size() >= 2 && chain.back().size() > 1) {
    RatPoly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  std::vector<int> at_a;
  std::vector<int> at_inf;
  for (const auto& q : chain) {
    at_a.push_back(sgn(eval_rat(q, a)));
    at_inf.push_back(sgn(q.back()));
  }
  return sign_changes(at_a) - sign_changes(at_inf);
}

bool positive_on_nonnegative_axis(const UniPoly& p) {
  if (p.is_zero()) return false;
  if (sgn(p.coefficient(0)) <= 0) return false;
  return count_roots_above(p, Rational(0)) == 0;
}

BiPoly BiPoly::constant(const Integer& c) {
  BiPoly p;
  p.add_term(0, 0, c);
  return p;
}

BiPoly BiPoly::m() {
  BiPoly p;
  p.add_term(1, 0, 1);
  return p;
}

BiPoly BiPoly::theta() {
  BiPoly p;
  p.add_term(0, 1, 1);
  return p;
}

BiPoly BiPoly::from_theta_poly(const UniPoly& q, int m_power) {
  BiPoly p;
  for (int j = 0; j <= q.degree(); ++j) p.add_term(m_power, j, q.coefficient(j));
  return p;
}

void BiPoly::add_term(int i, int j, const Integer& c) {
  if (c == 0) return;
  auto key = std::make_pair(i, j);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Integer BiPoly::coefficient(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Integer(0) : it->second;
}

int BiPoly::degree_m() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, key.first);
  return d;
}

int BiPoly::total_degree() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, key.first + key.second);
  return d;
}

UniPoly BiPoly::coefficient_in_m(int i) const {
  std::vector<Integer> out;
  for (const auto& [key, c] : terms_) {
    if (key.first != i) continue;
    if (out.size() <= static_cast<std::size_t>(key.second)) out.resize(static_cast<std::size_t>(key.second) + 1);
    out[static_cast<std::size_t>(key.second)] = c;
  }
  return UniPoly(std::move(out));
}

double BiPoly::eval(double mv, double tv) const {
  double acc = 0.0;
  for (const auto& [key, c] : terms_) acc += c.get_d() * std::pow(mv, key.first) * std::pow(tv, key.second);
  return acc;
}

BiPoly BiPoly::pow(unsigned e) const {
  BiPoly result = constant(1);
  BiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<std::pair<int, int>, Integer>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    int dx = x.first.first + x.first.second;
    int dy = y.first.first + y.first.second;
    if (dx != dy) return dx > dy;
    return x.first.first > y.first.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : sorted) {
    std::string body = power_str("m", key.first);
    std::string t = power_str("theta", key.second);
    if (!body.empty() && !t.empty()) body += "*";
    body += t;
    append_monomial(out, first, c, body);
    first = false;
  }
  return out.str();
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  BiPoly out = a;
  for (const auto& [key, c] : b.terms_) out.add_term(key.first, key.second, c);
  return out;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  BiPoly out = a;
  for (const auto& [key, c] : b.terms_) out.add_term(key.first, key.second, -c);
  return out;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return out;
}

}  // namespace pdyn
