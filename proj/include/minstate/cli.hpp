#pragma once

#include <iosfwd>

namespace minstate {

/// Entry point of the `minstate` tool. Returns 0 on success, 1 on a data
/// error and 2 on a usage error.
int cli_main(int argc, char** argv);
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace minstate
