#ifndef SIGCORR_CLI_HPP
#define SIGCORR_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace sigcorr::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kNotPassing = 1, kUsage = 2, kNonConvergence = 3 };

/// Process-level settings taken from the environment:
///   SIGCORR_THREADS  worker count for Monte Carlo (default 1)
///   SIGCORR_FORMAT   default output format json | csv | text (default json)
struct Environment {
  unsigned threads = 1;
  std::string default_format = "json";

  static Environment from_process();
};

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

/// JSON text with every floating-point number printed as %.17g, two-space
/// indentation and a trailing line feed.
std::string dump_report(const nlohmann::ordered_json& report);

}  // namespace sigcorr::cli

#endif  // SIGCORR_CLI_HPP
