#pragma once

#include <iosfwd>

namespace cpnet::cli {

/// Exit codes: 0 success, 1 domain failure (validation, constraint, rejected
/// cycle), 2 usage, I/O or parse error. Data goes to `out`, diagnostics and
/// traces requested with --trace go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cpnet::cli
