#pragma once
// Command-line entry point: family, monotonicity, flow, admissible, solve, end.

#include <iosfwd>

namespace cmc {

/// Exit codes: 0 success, 1 a check failed, 2 usage or input error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv);

}  // namespace cmc
