#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hxray {

/// Command-line entry point. Exit codes: 0 success, 1 validation error
/// (bad flags, malformed input), 2 verification failure.
int cli_main(std::vector<std::string> args, std::istream& in, std::ostream& out,
             std::ostream& err);

}  // namespace hxray
