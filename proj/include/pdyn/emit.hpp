#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdyn/diagnostics.hpp"
#include "pdyn/psi.hpp"
#include "pdyn/scenario.hpp"

namespace pdyn {

// Exact values longer than this many characters are emitted as floats only.
inline constexpr std::size_t kMaxExactChars = 4096;

// Writes to a sibling temporary file and renames it over `path`.
// Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Columns n, psi, log_psi, is_mode, lc_violation.
std::string diagnostics_csv(const PsiSequence& seq, const DiagnosticsReport& report);
// Columns n, psi, log_psi, method, repr. Exact values print as p/q.
std::string psi_csv(const PsiSequence& seq);

nlohmann::ordered_json run_to_json(const Scenario& scenario, const ScenarioRun& run);

// Line plot of psi(n) with mode and minimum markers.
std::string render_svg(const PsiSequence& seq, const DiagnosticsReport& report, const std::string& title);

// Writes the outputs the scenario requests into `dir` and returns the paths
// in the order written.
std::vector<std::filesystem::path> emit_outputs(const Scenario& scenario, const ScenarioRun& run,
                                                const std::filesystem::path& dir);

}  // namespace pdyn
