#pragma once

#include <ostream>

namespace uniformize::cli {

/// Runs one command. Exit codes: 0 success, 1 usage or internal error,
/// 2 infeasible or invalid input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uniformize::cli
