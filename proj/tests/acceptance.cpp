#include <chrono>
#include <cstdio>
#include <string>

#include <fmt/format.h>

#include "quiltlab/verify.hpp"

int main() {
  using quiltlab::CheckStatus;
  quiltlab::VerifyOptions options;
  options.seed = 20240611;
  options.budget_seconds = 900.0;
  options.progress = [](const quiltlab::CheckResult& r) {
    fmt::print("criterion {:>2} {:<22} {}  ({:.1f} s)  {}\n", r.criterion, r.name,
               quiltlab::to_string(r.status), r.seconds, r.detail);
    std::fflush(stdout);
  };

  const auto t0 = std::chrono::steady_clock::now();
  const quiltlab::VerifyReport first = quiltlab::verify_all(options);
  options.progress = nullptr;
  const quiltlab::VerifyReport second = quiltlab::verify_all(options);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool all = first.ok();
  for (const auto& c : first.checks) all = all && c.status == CheckStatus::Pass;
  const bool identical = quiltlab::to_text(first) == quiltlab::to_text(second);
  const bool deterministic = identical && total < 900.0;
  fmt::print("criterion 11 {:<22} {}  ({:.1f} s)  two verify-all runs {}, total {:.1f} s\n", "determinism",
             deterministic ? "PASS" : "FAIL", total, identical ? "byte-identical" : "differ", total);
  all = all && deterministic;
  fmt::print("acceptance: {}\n", all ? "all criteria PASS" : "FAILURES");
  return all ? 0 : 1;
}
