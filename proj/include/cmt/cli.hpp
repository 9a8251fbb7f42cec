#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmt::cli {

/// Runs one command-line invocation. Exit codes: 0 success (and a true
/// check), 1 a false check or a failed suite/definability run, 2 usage or
/// parse errors, 3 model validation errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cmt::cli
