#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "pdyn/emit.hpp"
#include "pdyn/errors.hpp"
#include "pdyn/scenario.hpp"

using namespace pdyn;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = PDYN_SOURCE_DIR;

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string minimal(const std::string& extra, const std::string& horizon = "10") {
  return R"({
  "schema": 1,
  "name": "t",
  "family": {"kind": "bernoulli"},
  "prior": {"type": "uniform01"},
  "theta0": 0.3,
  "theta1": 0.6,
  "horizon": )" +
         horizon + extra + "\n}\n";
}

int error_line(const std::string& text) {
  try {
    parse_scenario(text, "mem");
  } catch (const ScenarioError& e) {
    return e.line();
  }
  return -1;
}

fs::path temp_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("pdyn-test-" + tag + "-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(ScenarioParse, BundledFilesLoad) {
  for (const auto& entry : fs::directory_iterator(kSource / "scenarios")) {
    Scenario s = load_scenario(entry.path());
    EXPECT_EQ(s.name + ".json", entry.path().filename().string());
    EXPECT_GE(s.horizon, 3);
  }
  Scenario f1 = load_scenario(kSource / "scenarios/figure1.json");
  EXPECT_EQ(f1.numeric_mode, NumericMode::Exact);
  ASSERT_TRUE(f1.theta1.is_exact());
  EXPECT_EQ(f1.theta1.exact(), q(13, 20));
  EXPECT_TRUE(f1.wants(OutputKind::Svg));
}

TEST(ScenarioParse, JsonNumbersBecomeShortestRationals) {
  Scenario s = parse_scenario(minimal(""));
  ASSERT_TRUE(s.theta0.is_exact());
  EXPECT_EQ(s.theta0.exact(), q(3, 10));
  EXPECT_EQ(s.numeric_mode, NumericMode::Auto);
}

TEST(ScenarioParse, RoundTripThroughJson) {
  Scenario s = load_scenario(kSource / "scenarios/figure1.json");
  Scenario back = parse_scenario(scenario_to_json(s).dump(2));
  EXPECT_EQ(back.name, s.name);
  EXPECT_EQ(back.horizon, s.horizon);
  EXPECT_TRUE(back.theta0 == s.theta0);
  EXPECT_EQ(std::get<DiscretePrior>(back.prior).size(), 3u);
}

TEST(ScenarioErrors, AnchoredAtOffendingLine) {
  try {
    load_scenario(kSource / "tests/data/bad_weights.json");
    FAIL() << "expected a schema error";
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.line(), 7);
    EXPECT_NE(std::string(e.what()).find("atom weights sum to 2/3"), std::string::npos);
  }
  EXPECT_EQ(error_line(minimal("", "2")), 8);
  EXPECT_EQ(error_line(minimal("", "4.5")), 8);
  EXPECT_EQ(error_line(minimal(",\n  \"colour\": \"red\"")), 9);
  EXPECT_EQ(error_line(minimal(",\n  \"outputs\": [\"csv\",\n    \"png\"]")), 10);
  EXPECT_EQ(error_line(minimal(",\n  \"numeric_mode\": \"fast\"")), 9);
  // theta0 outside [0, 1] on line 6.
  std::string bad = minimal("");
  bad.replace(bad.find("0.3"), 3, "1.5");
  EXPECT_EQ(error_line(bad), 6);
  // Missing key is anchored at the enclosing object.
  EXPECT_EQ(error_line("{\n  \"schema\": 1\n}"), 1);
  // Invalid JSON reports the parser's line.
  EXPECT_EQ(error_line("{\n  \"schema\": 1,\n  \"name\": \n}"), 4);
}

TEST(ScenarioErrors, ExactUnavailable) {
  const std::string text = R"({
  "schema": 1,
  "name": "n",
  "family": {"kind": "normal", "sigma": 2},
  "prior": {"type": "stdnormal"},
  "theta0": 0.1,
  "theta1": 0.2,
  "horizon": 10,
  "numeric_mode": "exact"
})";
  try {
    parse_scenario(text, "mem");
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.line(), 9);
    EXPECT_NE(e.message().find("not available"), std::string::npos);
  }
  EXPECT_TRUE(exact_available(load_scenario(kSource / "scenarios/figure1.json")));
  EXPECT_THROW(run_scenario(parse_scenario(R"({"schema": 1, "name": "n", "family": {"kind": "normal", "sigma": 2},
  "prior": {"type": "stdnormal"}, "theta0": 0.1, "theta1": 0.2, "horizon": 10})"),
                            NumericMode::Exact),
               ScenarioError);
}

TEST(ScenarioRunTest, ModesSelectMethods) {
  Scenario f1 = load_scenario(kSource / "scenarios/figure1.json");
  f1.horizon = 30;
  ScenarioRun exact = run_scenario(f1);
  EXPECT_EQ(exact.sequence.method, PsiMethod::ExactRational);
  ScenarioRun flt = run_scenario(f1, NumericMode::Float);
  EXPECT_EQ(flt.sequence.method, PsiMethod::LogSpaceSum);
  EXPECT_EQ(exact.diagnostics.modes, flt.diagnostics.modes);
  Scenario f3 = load_scenario(kSource / "scenarios/figure3.json");
  f3.horizon = 100;
  EXPECT_EQ(run_scenario(f3).sequence.method, PsiMethod::ClosedFormNormal);
}

TEST(Emit, WritesAllOutputs) {
  Scenario s = load_scenario(kSource / "scenarios/figure1.json");
  s.horizon = 25;
  ScenarioRun run = run_scenario(s);
  const fs::path dir = temp_dir("emit");
  auto written = emit_outputs(s, run, dir);
  EXPECT_EQ(written.size(), 4u);
  std::string csv = read_file(dir / "figure1.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 26);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,psi,log_psi,is_mode,lc_violation");
  std::string psi = read_file(dir / "figure1.psi.csv");
  EXPECT_NE(psi.find(",exact_rational,exact\n"), std::string::npos);
  auto j = nlohmann::json::parse(read_file(dir / "figure1.json"));
  EXPECT_EQ(j["values"].size(), 25u);
  EXPECT_EQ(j["values"][0]["exact"], to_string(run.sequence.exact_value(1)));
  std::string svg = read_file(dir / "figure1.svg");
  EXPECT_NE(svg.find(">n</text>"), std::string::npos);
  EXPECT_NE(svg.find("ψ(n)"), std::string::npos);
  EXPECT_NE(svg.find("mode n=1"), std::string::npos);
  for (const auto& e : fs::directory_iterator(dir)) EXPECT_EQ(e.path().string().find(".tmp"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Emit, LongSequencesAreDecimated) {
  Scenario s = load_scenario(kSource / "scenarios/figure3.json");
  ScenarioRun run = run_scenario(s);
  std::string svg = render_svg(run.sequence, run.diagnostics, "t");
  const auto start = svg.find("points=\"");
  const auto end = svg.find('"', start + 8);
  const std::string pts = svg.substr(start + 8, end - start - 8);
  EXPECT_LE(std::count(pts.begin(), pts.end(), ' ') + 1, 2000);
}

TEST(Emit, IoFailuresAreReported) {
  EXPECT_THROW(write_file_atomic("/proc/pdyn-not-writable/x.csv", "x"), IoError);
  Scenario s = parse_scenario(minimal(""));
  ScenarioRun run = run_scenario(s);
  EXPECT_THROW(emit_outputs(s, run, "/proc/pdyn-not-writable"), IoError);
}
