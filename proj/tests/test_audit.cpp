#include <gtest/gtest.h>

#include <stdexcept>

#include "pdyn/audit.hpp"

using namespace pdyn;

TEST(Audit, EverySuitePasses) {
  for (const auto& name : audit_suite_names()) {
    AuditReport r = run_audit(name, 42);
    EXPECT_EQ(r.suite, name);
    EXPECT_FALSE(r.checks.empty()) << name;
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << name << "/" << c.name << " " << c.detail.dump();
  }
}

TEST(Audit, OrdersSuiteIsSeedDeterministic) {
  EXPECT_EQ(audit_orders(7).to_json().dump(), audit_orders(7).to_json().dump());
  EXPECT_TRUE(audit_orders(8).passed());
}

TEST(Audit, ReportBookkeeping) {
  AuditReport r;
  r.suite = "x";
  r.add("a", true);
  EXPECT_TRUE(r.passed());
  r.add("b", false, {{"why", "test"}});
  EXPECT_FALSE(r.passed());
  auto j = r.to_json();
  EXPECT_EQ(j["suite"], "x");
  EXPECT_EQ(j["checks"].size(), 2u);
}

TEST(Audit, UnknownSuiteThrows) { EXPECT_THROW(run_audit("nope", 1), std::invalid_argument); }
