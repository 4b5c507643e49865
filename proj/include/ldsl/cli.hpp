#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ldsl::cli {

/// Exit statuses of run().
inline constexpr int kOk = 0;
inline constexpr int kModuleError = 1;  ///< a library operation failed, or verify found failures
inline constexpr int kConfigError = 2;  ///< bad flags, preset grammar or coefficient source

/// Runs one command line (args[0] is the program name). Results go to `out`
/// unless --out names a file; diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ldsl::cli
