#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quiltlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the quilt-lab command line. args excludes the program name.
/// Returns 0 on success, 1 when a verification fails and 2 on usage or
/// input errors, which are reported on err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quiltlab
