#include "pdyn/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "pdyn/errors.hpp"

namespace pdyn {

using ojson = nlohmann::ordered_json;

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

namespace {

std::optional<std::string> exact_text(const PsiSequence& seq, int n) {
  if (!seq.is_exact()) return std::nullopt;
  const Rational& q = seq.exact_value(n);
  // Digit counts from the bit sizes, so huge values are never stringified.
  const std::size_t approx = static_cast<std::size_t>(
      0.30103 * static_cast<double>(mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2)));
  if (approx > kMaxExactChars) return std::nullopt;
  return to_string(q);
}

std::string repr_name(const PsiSequence& seq, bool exact_written) {
  if (!seq.is_exact()) return "float";
  return exact_written ? "exact" : "exact_rounded";
}

}  // namespace

std::string diagnostics_csv(const PsiSequence& seq, const DiagnosticsReport& report) {
  const std::set<int> modes(report.modes.begin(), report.modes.end());
  const std::set<int> violations(report.logconcavity_violations.begin(), report.logconcavity_violations.end());
  std::string out = "n,psi,log_psi,is_mode,lc_violation\n";
  for (int n = seq.first_n; n <= seq.last_n(); ++n) {
    out += std::to_string(n) + "," + format_double(seq.value(n)) + "," + format_double(seq.log_value(n)) + "," +
           (modes.count(n) ? "1" : "0") + "," + (violations.count(n) ? "1" : "0") + "\n";
  }
  return out;
}

std::string psi_csv(const PsiSequence& seq) {
  const std::string method(to_string(seq.method));
  std::string out = "n,psi,log_psi,method,repr\n";
  for (int n = seq.first_n; n <= seq.last_n(); ++n) {
    auto exact = exact_text(seq, n);
    out += std::to_string(n) + "," + (exact ? *exact : format_double(seq.value(n))) + "," +
           format_double(seq.log_value(n)) + "," + method + "," + repr_name(seq, exact.has_value()) + "\n";
  }
  return out;
}

ojson run_to_json(const Scenario& scenario, const ScenarioRun& run) {
  const PsiSequence& seq = run.sequence;
  ojson j;
  j["schema"] = 1;
  j["scenario"] = scenario_to_json(scenario);
  j["numeric_mode_used"] = std::string(to_string(run.mode_used));
  j["method"] = std::string(to_string(seq.method));
  j["representation"] = std::string(to_string(seq.representation));
  j["n_range"] = {seq.first_n, seq.last_n()};
  j["psi_zero"] = run.psi_zero ? ojson(to_string(*run.psi_zero)) : ojson(nullptr);
  j["diagnostics"] = run.diagnostics.to_json();
  ojson values = ojson::array();
  for (int n = seq.first_n; n <= seq.last_n(); ++n) {
    ojson v;
    v["n"] = n;
    v["psi"] = format_double(seq.value(n));
    v["log_psi"] = format_double(seq.log_value(n));
    if (seq.is_exact()) {
      auto exact = exact_text(seq, n);
      v["exact"] = exact ? ojson(*exact) : ojson(nullptr);
    }
    values.push_back(std::move(v));
  }
  j["values"] = std::move(values);
  return j;
}

namespace {

std::string fixed(double x, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string tick_label(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Roughly `target` ticks on a 1-2-5 grid covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target) {
  std::vector<double> ticks;
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) ticks.push_back(std::fabs(t) < 1e-12 * step ? 0.0 : t);
  return ticks;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const PsiSequence& seq, const DiagnosticsReport& report, const std::string& title) {
  constexpr double W = 800, H = 500, L = 90, R = 30, T = 40, B = 60;
  constexpr std::size_t kMaxPoints = 2000;
  const double x0 = seq.first_n;
  const double x1 = std::max<double>(seq.last_n(), x0 + 1);
  double y0 = INFINITY;
  double y1 = -INFINITY;
  for (int n = seq.first_n; n <= seq.last_n(); ++n) {
    y0 = std::min(y0, seq.value(n));
    y1 = std::max(y1, seq.value(n));
  }
  const double pad = (y1 > y0) ? 0.05 * (y1 - y0) : std::max(std::fabs(y0) * 0.05, 1e-3);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double n) { return L + (n - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << " " << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (double t : nice_ticks(x0, x1, 8)) {
    s << "<line x1=\"" << fixed(px(t)) << "\" y1=\"" << H - B << "\" x2=\"" << fixed(px(t)) << "\" y2=\"" << H - B + 5
      << "\" stroke=\"black\"/>";
    s << "<text x=\"" << fixed(px(t)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << tick_label(t)
      << "</text>\n";
  }
  for (double t : nice_ticks(y0, y1, 6)) {
    s << "<line x1=\"" << L - 5 << "\" y1=\"" << fixed(py(t)) << "\" x2=\"" << L << "\" y2=\"" << fixed(py(t))
      << "\" stroke=\"black\"/>";
    s << "<text x=\"" << L - 8 << "\" y=\"" << fixed(py(t) + 4) << "\" text-anchor=\"end\">" << tick_label(t)
      << "</text>\n";
  }
  s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">n</text>\n";
  s << "<text x=\"20\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << (T + H - B) / 2
    << ")\">ψ(n)</text>\n";

  // Bucketed min/max decimation keeps the envelope of long sequences.
  std::vector<int> idx;
  const std::size_t count = seq.size();
  if (count <= kMaxPoints) {
    for (int n = seq.first_n; n <= seq.last_n(); ++n) idx.push_back(n);
  } else {
    const std::size_t buckets = kMaxPoints / 2;
    for (std::size_t b = 0; b < buckets; ++b) {
      const int lo = seq.first_n + static_cast<int>(b * count / buckets);
      const int hi = seq.first_n + static_cast<int>((b + 1) * count / buckets) - 1;
      int imin = lo;
      int imax = lo;
      for (int n = lo; n <= hi; ++n) {
        if (seq.value(n) < seq.value(imin)) imin = n;
        if (seq.value(n) > seq.value(imax)) imax = n;
      }
      idx.push_back(std::min(imin, imax));
      if (imin != imax) idx.push_back(std::max(imin, imax));
    }
  }
  s << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) s << ' ';
    s << fixed(px(idx[i])) << ',' << fixed(py(seq.value(idx[i])));
  }
  s << "\"/>\n";
  for (int n : report.modes)
    s << "<circle cx=\"" << fixed(px(n)) << "\" cy=\"" << fixed(py(seq.value(n))) << "\" r=\"4\" fill=\"#c0392b\"><title>mode n="
      << n << "</title></circle>\n";
  for (int n : report.minima)
    s << "<rect x=\"" << fixed(px(n) - 4) << "\" y=\"" << fixed(py(seq.value(n)) - 4)
      << "\" width=\"8\" height=\"8\" fill=\"#27ae60\"><title>minimum n=" << n << "</title></rect>\n";
  s << "</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> emit_outputs(const Scenario& scenario, const ScenarioRun& run,
                                                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& file, const std::string& content) {
    const auto path = dir / file;
    write_file_atomic(path, content);
    written.push_back(path);
  };
  if (scenario.wants(OutputKind::Csv)) {
    put(scenario.name + ".csv", diagnostics_csv(run.sequence, run.diagnostics));
    put(scenario.name + ".psi.csv", psi_csv(run.sequence));
  }
  if (scenario.wants(OutputKind::Json)) put(scenario.name + ".json", run_to_json(scenario, run).dump(2) + "\n");
  if (scenario.wants(OutputKind::Svg)) {
    const std::string title = scenario.description.empty() ? scenario.name : scenario.description;
    put(scenario.name + ".svg", render_svg(run.sequence, run.diagnostics, title));
  }
  return written;
}

}  // namespace pdyn
