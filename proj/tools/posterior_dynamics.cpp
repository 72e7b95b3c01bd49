// posterior-dynamics: scenario runs, figure reproduction and audit suites.
//
// Exit codes: 0 success, 1 audit assertion failed, 2 usage or schema error,
// 3 numeric failure, 4 IO error.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pdyn/audit.hpp"
#include "pdyn/bundled_scenarios.hpp"
#include "pdyn/emit.hpp"
#include "pdyn/errors.hpp"
#include "pdyn/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kAuditFailed = 1;
constexpr int kUsage = 2;
constexpr int kNumeric = 3;
constexpr int kIo = 4;

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out.empty() ? "-" : out;
}

// Runs `body`, mapping library exceptions to exit codes.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const pdyn::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const pdyn::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const pdyn::QuadratureError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const pdyn::DomainError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const pdyn::UnsupportedError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const pdyn::ImpossibleObservation& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

void print_run(const pdyn::Scenario& s, const pdyn::ScenarioRun& run, const std::vector<std::filesystem::path>& files) {
  const auto& d = run.diagnostics;
  std::cout << s.name << ": method " << pdyn::to_string(run.sequence.method) << " ("
            << pdyn::to_string(run.sequence.representation) << "), n = " << run.sequence.first_n << ".."
            << run.sequence.last_n() << "\n";
  std::cout << "  modes: " << join(d.modes) << "\n";
  std::cout << "  minima: " << join(d.minima) << "\n";
  std::cout << "  log-concavity violations: " << d.logconcavity_violations.size() << "\n";
  std::cout << "  strictly decreasing from: "
            << (d.eventual_decrease_index ? std::to_string(*d.eventual_decrease_index) : std::string("not reached"))
            << "\n";
  for (const auto& f : files) std::cout << "  wrote " << f.string() << "\n";
}

int cmd_psi(const std::string& file, const std::string& mode, const std::string& out) {
  return guarded([&] {
    std::optional<pdyn::NumericMode> override_mode;
    if (!mode.empty()) override_mode = pdyn::parse_numeric_mode(mode);
    if (!std::filesystem::exists(file)) throw pdyn::IoError("scenario file not found: " + file);
    const pdyn::Scenario s = pdyn::load_scenario(file);
    const pdyn::ScenarioRun run = pdyn::run_scenario(s, override_mode);
    print_run(s, run, pdyn::emit_outputs(s, run, out));
    return kOk;
  });
}

int cmd_figures(const std::string& which, const std::string& out) {
  std::vector<std::pair<std::string, std::string_view>> selected;
  const std::vector<std::pair<std::string, std::string_view>> all = {
      {"1", pdyn::bundled::figure1}, {"2", pdyn::bundled::figure2}, {"3", pdyn::bundled::figure3}};
  for (const auto& entry : all)
    if (which == "all" || which == entry.first) selected.push_back(entry);
  if (selected.empty()) {
    std::cerr << "error: figure must be 1, 2, 3 or all\n";
    return kUsage;
  }
  return guarded([&] {
    for (const auto& [id, text] : selected) {
      pdyn::Scenario s = pdyn::parse_scenario(text, "figure" + id + ".json");
      s.outputs = {pdyn::OutputKind::Csv, pdyn::OutputKind::Json, pdyn::OutputKind::Svg};
      const pdyn::ScenarioRun run = pdyn::run_scenario(s);
      print_run(s, run, pdyn::emit_outputs(s, run, out));
    }
    return kOk;
  });
}

int cmd_audit(const std::string& suite, std::uint64_t seed, const std::string& json_path) {
  std::vector<std::string> suites;
  const auto names = pdyn::audit_suite_names();
  if (suite == "all") {
    suites = names;
  } else if (std::find(names.begin(), names.end(), suite) != names.end()) {
    suites = {suite};
  } else {
    std::cerr << "error: unknown audit suite '" << suite << "'\n";
    return kUsage;
  }
  return guarded([&] {
    nlohmann::ordered_json report;
    report["schema"] = 1;
    report["seed"] = seed;
    report["suites"] = nlohmann::ordered_json::array();
    bool all_passed = true;
    std::size_t width = 0;
    std::vector<pdyn::AuditReport> results;
    for (const auto& name : suites) {
      results.push_back(pdyn::run_audit(name, seed));
      for (const auto& c : results.back().checks) width = std::max(width, name.size() + 1 + c.name.size());
    }
    for (const auto& r : results) {
      for (const auto& c : r.checks) {
        const std::string label = r.suite + "/" + c.name;
        std::cout << label << std::string(width + 2 - label.size(), ' ') << (c.passed ? "PASS" : "FAIL") << "\n";
      }
      all_passed = all_passed && r.passed();
      report["suites"].push_back(r.to_json());
    }
    report["passed"] = all_passed;
    std::cout << (all_passed ? "all checks passed" : "some checks FAILED") << "\n";
    if (!json_path.empty()) {
      const std::string text = report.dump(2) + "\n";
      if (json_path == "-") {
        std::cout << text;
      } else {
        pdyn::write_file_atomic(json_path, text);
      }
    }
    return all_passed ? kOk : kAuditFailed;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected posterior sequences for one-parameter exponential families"};
  app.require_subcommand(1);

  std::string psi_file;
  std::string psi_mode;
  std::string psi_out = ".";
  auto* psi = app.add_subcommand("psi", "Compute psi(n) for a scenario file and write its outputs");
  psi->add_option("file", psi_file, "Scenario JSON")->required();
  psi->add_option("--mode", psi_mode, "Override numeric mode")->check(CLI::IsMember({"exact", "float", "auto"}));
  psi->add_option("--out", psi_out, "Output directory");

  std::string suite;
  std::uint64_t seed = 42;
  std::string json_path;
  auto* audit = app.add_subcommand("audit", "Run a property audit suite");
  audit->add_option("suite", suite, "turan, bessel, logconcavity, orders, appendix_a4, asymptotics or all")->required();
  audit->add_option("--seed", seed, "Seed for randomized suites");
  audit->add_option("--json", json_path, "Write the JSON report here ('-' for stdout)");

  std::string which;
  std::string fig_out = "figures";
  auto* figures = app.add_subcommand("figures", "Reproduce the bundled figure scenarios");
  figures->add_option("which", which, "1, 2, 3 or all")->required();
  figures->add_option("--out", fig_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*psi) return cmd_psi(psi_file, psi_mode, psi_out);
  if (*audit) return cmd_audit(suite, seed, json_path);
  return cmd_figures(which, fig_out);
}
