#include "pdyn/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <cmath>
#include <sstream>

#include "pdyn/errors.hpp"

namespace pdyn {

using ojson = nlohmann::ordered_json;

std::string_view to_string(NumericMode mode) {
  switch (mode) {
    case NumericMode::Exact:
      return "exact";
    case NumericMode::Float:
      return "float";
    case NumericMode::Auto:
      return "auto";
  }
  return "auto";
}

NumericMode parse_numeric_mode(std::string_view text) {
  if (text == "exact") return NumericMode::Exact;
  if (text == "float") return NumericMode::Float;
  if (text == "auto") return NumericMode::Auto;
  throw std::invalid_argument("numeric mode must be exact, float or auto, got '" + std::string(text) + "'");
}

namespace {

std::string_view output_name(OutputKind kind) {
  switch (kind) {
    case OutputKind::Csv:
      return "csv";
    case OutputKind::Json:
      return "json";
    case OutputKind::Svg:
      return "svg";
  }
  return "csv";
}

}  // namespace

bool Scenario::wants(OutputKind kind) const { return std::find(outputs.begin(), outputs.end(), kind) != outputs.end(); }

ScenarioError::ScenarioError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line), message_(message) {}

namespace {

// Recursive scanner over text that nlohmann has already accepted.
class LineScanner {
 public:
  explicit LineScanner(std::string_view text) : text_(text) {}

  std::map<std::string, int> run() {
    skip_ws();
    value("");
    return std::move(lines_);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
      } else if (c != ' ' && c != '\t' && c != '\r') {
        break;
      }
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') {
        out.push_back(text_[pos_]);
        ++pos_;
      }
      out.push_back(text_[pos_]);
      ++pos_;
    }
    ++pos_;  // closing quote
    return out;
  }

  static std::string escape_pointer(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') {
        out += "~0";
      } else if (c == '/') {
        out += "~1";
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  void value(const std::string& pointer) {
    lines_.emplace(pointer, line_);
    char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      if (text_[pos_] == '}') {
        ++pos_;
        return;
      }
      while (true) {
        skip_ws();
        const int key_line = line_;
        std::string key = string_token();
        skip_ws();
        ++pos_;  // colon
        skip_ws();
        const std::string child = pointer + "/" + escape_pointer(key);
        value(child);
        // Anchor object members at their key.
        lines_[child] = key_line;
        skip_ws();
        if (text_[pos_++] == '}') return;
      }
    }
    if (c == '[') {
      ++pos_;
      skip_ws();
      if (text_[pos_] == ']') {
        ++pos_;
        return;
      }
      for (int i = 0;; ++i) {
        skip_ws();
        value(pointer + "/" + std::to_string(i));
        skip_ws();
        if (text_[pos_++] == ']') return;
      }
    }
    if (c == '"') {
      string_token();
      return;
    }
    while (pos_ < text_.size() && std::string_view(",}] \t\r\n").find(text_[pos_]) == std::string_view::npos) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

class SchemaReader {
 public:
  SchemaReader(std::string source, std::map<std::string, int> lines)
      : source_(std::move(source)), lines_(std::move(lines)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    throw ScenarioError(source_, line_of(pointer), message);
  }

  int line_of(std::string pointer) const {
    while (true) {
      auto it = lines_.find(pointer);
      if (it != lines_.end()) return it->second;
      if (pointer.empty()) return 1;
      pointer = pointer.substr(0, pointer.rfind('/'));
    }
  }

  static std::string field_name(const std::string& pointer) {
    return pointer.empty() ? "document" : "'" + pointer.substr(1) + "'";
  }

  void only_keys(const ojson& obj, const std::string& pointer, std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        fail(pointer + "/" + key, "unknown field " + field_name(pointer + "/" + key));
    }
  }

  const ojson& require(const ojson& obj, const std::string& pointer, const std::string& key) const {
    if (!obj.contains(key)) fail(pointer, "missing required field " + field_name(pointer + "/" + key));
    return obj.at(key);
  }

  const ojson& object(const ojson& obj, const std::string& pointer, const std::string& key) const {
    const ojson& v = require(obj, pointer, key);
    if (!v.is_object()) fail(pointer + "/" + key, field_name(pointer + "/" + key) + " must be an object");
    return v;
  }

  std::string string(const ojson& v, const std::string& pointer) const {
    if (!v.is_string()) fail(pointer, field_name(pointer) + " must be a string");
    return v.get<std::string>();
  }

  // Strings are parsed as rationals; JSON numbers through their shortest
  // decimal rendering, so 0.65 becomes 13/20.
  Rational rational(const ojson& v, const std::string& pointer) const {
    std::string text;
    if (v.is_string()) {
      text = v.get<std::string>();
    } else if (v.is_number()) {
      text = v.dump();
    } else {
      fail(pointer, field_name(pointer) + " must be a number or a rational string");
    }
    try {
      return parse_rational(text);
    } catch (const std::exception& e) {
      fail(pointer, field_name(pointer) + ": " + e.what());
    }
  }

  double real(const ojson& v, const std::string& pointer) const { return rational(v, pointer).get_d(); }

  int integer(const ojson& v, const std::string& pointer) const {
    if (!v.is_number_integer()) fail(pointer, field_name(pointer) + " must be an integer");
    const auto x = v.get<long long>();
    if (x < 0 || x > 100000000) fail(pointer, field_name(pointer) + " out of range");
    return static_cast<int>(x);
  }

 private:
  std::string source_;
  std::map<std::string, int> lines_;
};

Family read_family(const SchemaReader& r, const ojson& root) {
  const ojson& f = r.object(root, "", "family");
  r.only_keys(f, "/family", {"kind", "sigma"});
  const std::string kind = r.string(r.require(f, "/family", "kind"), "/family/kind");
  const bool has_sigma = f.contains("sigma");
  if (kind == "normal") {
    if (!has_sigma) r.fail("/family", "missing required field 'family/sigma' for the normal family");
    const double sigma = r.real(f.at("sigma"), "/family/sigma");
    if (!(sigma > 0)) r.fail("/family/sigma", "'family/sigma' must be positive");
    return Family::normal(sigma);
  }
  if (has_sigma) r.fail("/family/sigma", "'family/sigma' is only allowed for the normal family");
  if (kind == "bernoulli") return Family::bernoulli();
  if (kind == "poisson") return Family::poisson();
  if (kind == "exponential") return Family::exponential();
  r.fail("/family/kind", "unknown family kind '" + kind + "'");
}

Prior read_prior(const SchemaReader& r, const ojson& root, const Family& family) {
  const ojson& p = r.object(root, "", "prior");
  const std::string type = r.string(r.require(p, "/prior", "type"), "/prior/type");
  if (type == "atoms") {
    r.only_keys(p, "/prior", {"type", "atoms"});
    const ojson& atoms = r.require(p, "/prior", "atoms");
    if (!atoms.is_array() || atoms.empty()) r.fail("/prior/atoms", "'prior/atoms' must be a non-empty array");
    std::vector<Atom> out;
    Rational total = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string ptr = "/prior/atoms/" + std::to_string(i);
      const ojson& a = atoms[i];
      if (!a.is_object()) r.fail(ptr, "atom must be an object");
      r.only_keys(a, ptr, {"theta", "weight"});
      Rational theta = r.rational(r.require(a, ptr, "theta"), ptr + "/theta");
      Rational weight = r.rational(r.require(a, ptr, "weight"), ptr + "/weight");
      if (sgn(weight) <= 0) r.fail(ptr + "/weight", "atom weight must be positive");
      for (const auto& prev : out)
        if (prev.theta.exact() == theta) r.fail(ptr + "/theta", "duplicate atom location " + to_string(theta));
      total += weight;
      out.push_back({Number(theta), weight});
    }
    total.canonicalize();
    if (total != 1) r.fail("/prior/atoms", "atom weights sum to " + to_string(total) + ", expected 1");
    DiscretePrior prior(std::move(out));
    try {
      prior.check_family(family);
    } catch (const DomainError& e) {
      r.fail("/prior/atoms", e.what());
    }
    return prior;
  }
  NamedPrior named;
  if (type == "uniform01") {
    r.only_keys(p, "/prior", {"type"});
    named = Uniform01{};
  } else if (type == "beta") {
    r.only_keys(p, "/prior", {"type", "a", "b"});
    const double a = r.real(r.require(p, "/prior", "a"), "/prior/a");
    const double b = r.real(r.require(p, "/prior", "b"), "/prior/b");
    if (!(a > 0)) r.fail("/prior/a", "'prior/a' must be positive");
    if (!(b > 0)) r.fail("/prior/b", "'prior/b' must be positive");
    named = BetaPrior{a, b};
  } else if (type == "stdnormal") {
    r.only_keys(p, "/prior", {"type"});
    named = StdNormal{};
  } else if (type == "exp") {
    r.only_keys(p, "/prior", {"type", "lambda"});
    const double lambda = p.contains("lambda") ? r.real(p.at("lambda"), "/prior/lambda") : 1.0;
    if (!(lambda > 0)) r.fail("/prior/lambda", "'prior/lambda' must be positive");
    named = ExpPrior{lambda};
  } else {
    r.fail("/prior/type", "unknown prior type '" + type + "'");
  }
  const Interval support = named_prior_support(named);
  const Interval domain = family.theta_domain();
  if (support.lo < domain.lo || support.hi > domain.hi)
    r.fail("/prior/type", "prior " + describe(named) + " puts mass outside the " + std::string(family.name()) +
                              " parameter domain");
  return named;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::map<std::string, int> json_value_lines(std::string_view text) { return LineScanner(text).run(); }

Scenario parse_scenario(std::string_view text, const std::string& source) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n'));
    std::string msg = e.what();
    if (auto at = msg.find("syntax error"); at != std::string::npos) msg = msg.substr(at);
    throw ScenarioError(source, line, "invalid JSON: " + msg);
  }
  SchemaReader r(source, json_value_lines(text));
  if (!root.is_object()) r.fail("", "scenario must be a JSON object");
  r.only_keys(root, "", {"schema", "name", "description", "family", "prior", "theta0", "theta1", "horizon",
                         "numeric_mode", "include_zero", "outputs"});
  if (root.contains("schema") && !(root["schema"].is_number_integer() && root["schema"].get<int>() == 1))
    r.fail("/schema", "unsupported schema version (expected 1)");

  Scenario s;
  s.source = source;
  s.name = r.string(r.require(root, "", "name"), "/name");
  if (s.name.empty() || s.name.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-.") !=
                            std::string::npos)
    r.fail("/name", "'name' must be a non-empty file-name-safe identifier");
  if (root.contains("description")) s.description = r.string(root["description"], "/description");
  s.family = read_family(r, root);
  s.prior = read_prior(r, root, s.family);

  const Rational t0 = r.rational(r.require(root, "", "theta0"), "/theta0");
  const Rational t1 = r.rational(r.require(root, "", "theta1"), "/theta1");
  s.theta0 = Number(t0);
  s.theta1 = Number(t1);
  const bool bernoulli = s.family.kind() == FamilyKind::Bernoulli;
  const auto* discrete = std::get_if<DiscretePrior>(&s.prior);
  for (const auto& [ptr, t] : {std::pair{"/theta0", t0}, std::pair{"/theta1", t1}}) {
    const double x = t.get_d();
    const bool closed_ok = bernoulli && discrete != nullptr && x >= 0.0 && x <= 1.0;
    if (!closed_ok && !s.family.theta_domain().contains(x))
      r.fail(ptr, "'" + std::string(ptr + 1) + "' = " + to_string(t) + " outside the " + std::string(s.family.name()) +
                      " parameter domain");
  }
  if (discrete != nullptr) {
    if (!discrete->index_of(s.theta0)) r.fail("/theta0", "'theta0' must be an atom of the prior");
  } else {
    const NamedPrior& named = std::get<NamedPrior>(s.prior);
    if (!std::isfinite(named_prior_log_density(named, t0.get_d())))
      r.fail("/theta0", "'theta0' lies outside the prior support");
  }

  s.horizon = r.integer(r.require(root, "", "horizon"), "/horizon");
  if (s.horizon < 3) r.fail("/horizon", "'horizon' must be at least 3");

  if (root.contains("numeric_mode")) {
    try {
      s.numeric_mode = parse_numeric_mode(r.string(root["numeric_mode"], "/numeric_mode"));
    } catch (const std::invalid_argument& e) {
      r.fail("/numeric_mode", e.what());
    }
    s.numeric_mode_line = r.line_of("/numeric_mode");
  }
  if (root.contains("include_zero")) {
    if (!root["include_zero"].is_boolean()) r.fail("/include_zero", "'include_zero' must be a boolean");
    s.include_zero = root["include_zero"].get<bool>();
  }
  if (root.contains("outputs")) {
    const ojson& outs = root["outputs"];
    if (!outs.is_array()) r.fail("/outputs", "'outputs' must be an array");
    s.outputs.clear();
    for (std::size_t i = 0; i < outs.size(); ++i) {
      const std::string ptr = "/outputs/" + std::to_string(i);
      const std::string kind = r.string(outs[i], ptr);
      OutputKind k;
      if (kind == "csv") {
        k = OutputKind::Csv;
      } else if (kind == "json") {
        k = OutputKind::Json;
      } else if (kind == "svg") {
        k = OutputKind::Svg;
      } else {
        r.fail(ptr, "unknown output kind '" + kind + "' (expected csv, json or svg)");
      }
      if (!s.wants(k)) s.outputs.push_back(k);
    }
  }
  if (s.numeric_mode == NumericMode::Exact && !exact_available(s))
    r.fail("/numeric_mode", "numeric_mode 'exact' is not available for this family, prior and parameter choice");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::filesystem::filesystem_error("cannot open scenario", path, std::make_error_code(std::errc::io_error));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

ojson scenario_to_json(const Scenario& s) {
  ojson j;
  j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  ojson fam;
  fam["kind"] = std::string(s.family.name());
  if (s.family.kind() == FamilyKind::Normal) fam["sigma"] = format_double(s.family.sigma());
  j["family"] = fam;
  ojson prior;
  if (const auto* d = std::get_if<DiscretePrior>(&s.prior)) {
    prior["type"] = "atoms";
    prior["atoms"] = ojson::array();
    for (const auto& a : d->atoms()) prior["atoms"].push_back({{"theta", a.theta.to_string()}, {"weight", to_string(a.weight)}});
  } else {
    std::visit(overloaded{
                   [&](const Uniform01&) { prior["type"] = "uniform01"; },
                   [&](const BetaPrior& b) {
                     prior["type"] = "beta";
                     prior["a"] = format_double(b.a);
                     prior["b"] = format_double(b.b);
                   },
                   [&](const StdNormal&) { prior["type"] = "stdnormal"; },
                   [&](const ExpPrior& e) {
                     prior["type"] = "exp";
                     prior["lambda"] = format_double(e.lambda);
                   },
               },
               std::get<NamedPrior>(s.prior));
  }
  j["prior"] = prior;
  j["theta0"] = s.theta0.to_string();
  j["theta1"] = s.theta1.to_string();
  j["horizon"] = s.horizon;
  j["numeric_mode"] = std::string(to_string(s.numeric_mode));
  j["include_zero"] = s.include_zero;
  ojson outs = ojson::array();
  for (OutputKind k : s.outputs) outs.push_back(std::string(output_name(k)));
  j["outputs"] = outs;
  return j;
}

namespace {

bool is_uniform01(const Prior& prior) {
  const auto* named = std::get_if<NamedPrior>(&prior);
  return named != nullptr && std::holds_alternative<Uniform01>(*named);
}

template <class T>
const T* named_as(const Prior& prior) {
  const auto* named = std::get_if<NamedPrior>(&prior);
  return named == nullptr ? nullptr : std::get_if<T>(named);
}

bool has_closed_form(const Scenario& s) {
  switch (s.family.kind()) {
    case FamilyKind::Bernoulli:
      return is_uniform01(s.prior);
    case FamilyKind::Normal:
      return named_as<StdNormal>(s.prior) != nullptr;
    case FamilyKind::Exponential:
      return named_as<ExpPrior>(s.prior) != nullptr;
    case FamilyKind::Poisson:
      return false;
  }
  return false;
}

}  // namespace

bool exact_available(const Scenario& s) {
  if (s.family.kind() != FamilyKind::Bernoulli) return false;
  if (const auto* d = std::get_if<DiscretePrior>(&s.prior)) return d->is_exact();
  return is_uniform01(s.prior) && s.theta0 == s.theta1;
}

ScenarioRun run_scenario(const Scenario& s, std::optional<NumericMode> override_mode) {
  NumericMode mode = override_mode.value_or(s.numeric_mode);
  if (mode == NumericMode::Exact && !exact_available(s)) {
    throw ScenarioError(s.source, override_mode ? 0 : s.numeric_mode_line,
                        "numeric_mode 'exact' is not available for this family, prior and parameter choice");
  }
  const auto* discrete = std::get_if<DiscretePrior>(&s.prior);
  const double t0 = s.theta0.to_double();
  const double t1 = s.theta1.to_double();
  if (mode == NumericMode::Auto) mode = (!has_closed_form(s) && exact_available(s)) ? NumericMode::Exact : NumericMode::Float;

  ScenarioRun run;
  run.mode_used = mode;
  PsiSequence& seq = run.sequence;
  if (mode == NumericMode::Exact) {
    if (discrete != nullptr) {
      PsiOptions opts;
      opts.representation = Representation::Exact;
      seq = psi_bernoulli_finite(*discrete, s.theta0, s.theta1, s.horizon, opts);
    } else {
      seq = psi_bernoulli_uniform_exact(s.theta0.exact(), s.horizon);
    }
  } else if (s.family.kind() == FamilyKind::Bernoulli && discrete != nullptr) {
    PsiOptions opts;
    opts.representation = Representation::Float;
    seq = psi_bernoulli_finite(*discrete, s.theta0, s.theta1, s.horizon, opts);
  } else if (has_closed_form(s)) {
    switch (s.family.kind()) {
      case FamilyKind::Bernoulli:
        seq = psi_bernoulli_uniform(t0, t1, s.horizon);
        break;
      case FamilyKind::Normal:
        seq = psi_normal(t0, t1, s.family.sigma(), s.horizon);
        break;
      default:
        seq = psi_exponential(t0, t1, s.horizon, named_as<ExpPrior>(s.prior)->lambda);
        break;
    }
  } else {
    seq = psi_quadrature_sequence(s.family, s.prior, t0, t1, s.horizon);
  }
  seq.scenario = s.name;
  if (s.include_zero && discrete != nullptr) run.psi_zero = psi_zero(*discrete, s.theta0);
  run.diagnostics = diagnose(seq, &s.family, &s.prior, t0, t1);
  return run;
}

}  // namespace pdyn
