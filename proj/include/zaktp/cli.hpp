#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zaktp {

/// Runs `zaktp <command> [flags]`; args exclude the program name.
/// Returns 0 on success, 1 on a domain error (its name is printed to err),
/// 2 on a usage error.
int parse_and_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zaktp
