#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace pdyn {

struct AuditCheck {
  std::string name;
  bool passed = true;
  nlohmann::ordered_json detail;
};

struct AuditReport {
  std::string suite;
  std::vector<AuditCheck> checks;

  bool passed() const;
  void add(std::string name, bool ok, nlohmann::ordered_json detail = nlohmann::ordered_json::object());
  nlohmann::ordered_json to_json() const;
};

inline const std::vector<std::string>& audit_suite_names() {
  static const std::vector<std::string> names = {"turan",        "bessel",      "logconcavity",
                                                 "orders",       "appendix_a4", "asymptotics"};
  return names;
}

AuditReport audit_turan();
AuditReport audit_bessel();
AuditReport audit_logconcavity();
AuditReport audit_orders(std::uint64_t seed);
AuditReport audit_appendix_a4();
AuditReport audit_asymptotics();

// Runs one suite by name; throws std::invalid_argument for an unknown name.
AuditReport run_audit(const std::string& suite, std::uint64_t seed);

}  // namespace pdyn
