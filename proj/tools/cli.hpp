#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qspf::cli {

/// Entry point shared by the `qspf` binary and the tests. `args` excludes the
/// program name. Exit codes: 0 success, 1 solver or verification failure,
/// 2 invalid flags.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qspf::cli
