#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zetalab::cli {

// Full command-line surface, stream-injected for testing.  Returns the
// process exit code: 0 success, 1 validation/domain failure, 2 numerical
// accuracy failure, 64 usage error.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace zetalab::cli
