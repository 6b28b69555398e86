#pragma once

#include <iosfwd>

namespace sinklock {

/// Entry point behind the sinklock binary. Exit codes: 0 success or
/// verified, 1 verification failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace sinklock
