#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orb4::cli {

/// Executes one orb4kit invocation. args holds the command line after the
/// program name. The report goes to out as a single JSON object with --json,
/// or as indented text carrying the same values otherwise; diagnostics go to
/// err. Returns 0 on success (verification passed where one ran), 1 when a
/// verification ran and failed, 2 on invalid input or malformed flags.
/// Output is byte-identical across runs for identical arguments.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orb4::cli
