#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "quiltlab/errors.hpp"
#include "quiltlab/version.hpp"

namespace quiltlab {

enum class CheckStatus { Pass, Fail, Skipped };

const char* to_string(CheckStatus s);

struct CheckResult {
  int criterion = 0;
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  std::string detail;
  double seconds = 0.0;  ///< wall time; not part of the report text
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  double budget_seconds = 900.0;  ///< checks starting after this much elapsed time are skipped
  bool inject_determinant_fault = false;
  /// Progress callback invoked after each check.
  std::function<void(const CheckResult&)> progress;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  double budget_seconds = 0.0;
  bool inject_determinant_fault = false;
  std::vector<CheckResult> checks;

  /// True when no check failed; skipped checks do not count as failures.
  bool ok() const;
};

/// Individual acceptance checks 1..10. Each is deterministic given the seed.
CheckResult check_meander_counts(std::uint64_t seed);
CheckResult check_meander_factorization(std::uint64_t seed);
CheckResult check_hopf(std::uint64_t seed);
CheckResult check_product_bijection(std::uint64_t seed);
CheckResult check_unit_determinant(std::uint64_t seed, bool inject_fault = false);
CheckResult check_winding_labels(std::uint64_t seed);
CheckResult check_mating_pipeline(std::uint64_t seed);
CheckResult check_poisson_partition(std::uint64_t seed);
CheckResult check_field_rotation(std::uint64_t seed);
CheckResult check_lattice_identities(std::uint64_t seed);

struct CheckEntry {
  int criterion;
  const char* name;
  std::function<CheckResult(const VerifyOptions&)> run;
};
const std::vector<CheckEntry>& check_registry();

/// Runs every check in criterion order within the time budget.
VerifyReport verify_all(const VerifyOptions& options);

/// Text report: a header line, then one `[STATUS] <criterion> <name>: <detail>`
/// line per check. Timings are excluded so equal seeds give equal bytes.
std::string to_text(const VerifyReport& r);
std::string report_to_json(const VerifyReport& r);
/// Errors: ParseError.
VerifyReport report_from_json(const std::string& text);

}  // namespace quiltlab
