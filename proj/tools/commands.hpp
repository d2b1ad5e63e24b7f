#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lrqt::cli {

enum ExitCode : int { ok = 0, computation_failed = 1, invalid_arguments = 2 };

/// Parses `args` (without the program name), runs the subcommand and returns
/// its exit code. Results go to --out when given, otherwise to `out`;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "340us" -> 3.4e-4. Accepts s, ms, us, µs and ns; bare numbers are seconds.
double parse_seconds(const std::string& text);

}  // namespace lrqt::cli
