#pragma once

#include <iosfwd>

namespace derivclust {

// Exit codes: 0 success, 1 data or validation error, 2 usage or I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace derivclust
