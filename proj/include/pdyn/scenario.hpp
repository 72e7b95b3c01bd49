#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pdyn/diagnostics.hpp"
#include "pdyn/families.hpp"
#include "pdyn/priors.hpp"
#include "pdyn/psi.hpp"

namespace pdyn {

enum class NumericMode { Exact, Float, Auto };

std::string_view to_string(NumericMode mode);
NumericMode parse_numeric_mode(std::string_view text);

enum class OutputKind { Csv, Json, Svg };

struct Scenario {
  std::string name;
  std::string description;
  Family family = Family::bernoulli();
  Prior prior = NamedPrior(Uniform01{});
  Number theta0;
  Number theta1;
  int horizon = 0;
  NumericMode numeric_mode = NumericMode::Auto;
  bool include_zero = false;
  std::vector<OutputKind> outputs = {OutputKind::Csv, OutputKind::Json};
  // Where the scenario came from, for error anchoring.
  std::string source = "<scenario>";
  int numeric_mode_line = 0;

  bool wants(OutputKind kind) const;
};

// Schema violation anchored to a line of the source text. what() reads
// "<source>:<line>: <message>".
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  std::string message_;
};

// Line of every JSON value in a syntactically valid document, keyed by JSON
// pointer ("" is the root, "/prior/atoms/0/theta" a nested value).
std::map<std::string, int> json_value_lines(std::string_view text);

Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::ordered_json scenario_to_json(const Scenario& scenario);

struct ScenarioRun {
  PsiSequence sequence;
  DiagnosticsReport diagnostics;
  NumericMode mode_used = NumericMode::Auto;
  std::optional<Rational> psi_zero;  // set when include_zero and the prior is discrete
};

// Picks closed form, then exact rational, then quadrature. `override_mode`
// replaces the scenario's numeric_mode when given. Requesting exact where no
// exact method applies throws ScenarioError anchored at the numeric_mode line
// (line 0 when the request came from the override).
ScenarioRun run_scenario(const Scenario& scenario, std::optional<NumericMode> override_mode = std::nullopt);

// True when numeric_mode = exact has an implementation for this scenario.
bool exact_available(const Scenario& scenario);

}  // namespace pdyn
