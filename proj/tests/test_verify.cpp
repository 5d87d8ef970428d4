#include <gtest/gtest.h>

#include "quiltlab/verify.hpp"

using namespace quiltlab;

TEST(Verify, ZeroBudgetSkipsEverything) {
  VerifyOptions o;
  o.seed = 5;
  o.budget_seconds = 0.0;
  int calls = 0;
  o.progress = [&](const CheckResult&) { ++calls; };
  const VerifyReport r = verify_all(o);
  ASSERT_EQ(r.checks.size(), check_registry().size());
  EXPECT_EQ(calls, static_cast<int>(r.checks.size()));
  for (const auto& c : r.checks) EXPECT_EQ(c.status, CheckStatus::Skipped);
  EXPECT_TRUE(r.ok());
  const std::string text = to_text(r);
  EXPECT_NE(text.find("[skipped] 1 meander-counts"), std::string::npos);
  EXPECT_NE(text.find("summary: 0 passed, 0 failed, 10 skipped"), std::string::npos);
}

TEST(Verify, RegistryCoversTenCriteria) {
  const auto& reg = check_registry();
  ASSERT_EQ(reg.size(), 10u);
  for (std::size_t i = 0; i < reg.size(); ++i) EXPECT_EQ(reg[i].criterion, static_cast<int>(i) + 1);
}

TEST(Verify, FastChecksPass) {
  EXPECT_EQ(check_meander_counts(1).status, CheckStatus::Pass);
  EXPECT_EQ(check_meander_factorization(1).status, CheckStatus::Pass);
  EXPECT_EQ(check_hopf(1).status, CheckStatus::Pass);
  EXPECT_EQ(check_poisson_partition(1).status, CheckStatus::Pass);
  EXPECT_EQ(check_lattice_identities(1).status, CheckStatus::Pass);
}

TEST(Verify, DeterminantFaultIsCaught) {
  const CheckResult good = check_unit_determinant(3, false);
  EXPECT_EQ(good.status, CheckStatus::Pass) << good.detail;
  const CheckResult bad = check_unit_determinant(3, true);
  EXPECT_EQ(bad.status, CheckStatus::Fail);
}

TEST(Verify, ReportsRoundTrip) {
  VerifyReport r;
  r.seed = 42;
  r.budget_seconds = 12.5;
  r.inject_determinant_fault = true;
  r.checks.push_back({1, "meander-counts", CheckStatus::Pass, "counts 1, 2", 0.3});
  r.checks.push_back({5, "unit-determinant", CheckStatus::Fail, "singular", 1.0});
  r.checks.push_back({6, "winding-labels", CheckStatus::Skipped, "", 0.0});
  const std::string json = report_to_json(r);
  const VerifyReport back = report_from_json(json);
  EXPECT_EQ(report_to_json(back), json);
  EXPECT_EQ(to_text(back), to_text(r));
  EXPECT_FALSE(back.ok());
  EXPECT_THROW(report_from_json("{}"), Error);
  EXPECT_THROW(report_from_json("not json"), Error);
}

TEST(Verify, TextExcludesTimings) {
  VerifyReport a;
  a.checks.push_back({2, "meander-factorization", CheckStatus::Pass, "ok", 1.0});
  VerifyReport b = a;
  b.checks[0].seconds = 99.0;
  EXPECT_EQ(to_text(a), to_text(b));
  EXPECT_EQ(report_to_json(a), report_to_json(b));
}
