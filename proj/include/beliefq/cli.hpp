#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace beliefq::cli {

/// Full command-line entry point; returns the process exit code.
/// 0 ok, 2 validation failure, 3 numeric failure, 4 I/O failure.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace beliefq::cli
