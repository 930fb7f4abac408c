#pragma once

#include <iostream>

namespace rir {

// Full command-line front end; links against every module so tests can
// drive it in-process. Returns the process exit code: 0 success,
// 1 validation/usage error, 2 internal numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace rir
