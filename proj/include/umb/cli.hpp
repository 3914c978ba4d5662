#pragma once

// Command-line front end. run_cli is the whole program minus process setup,
// so tests can drive it with in-memory streams.

#include <ostream>

namespace umb {

// Exit codes: 0 all checks pass, 1 geometric failure, 2 infrastructure error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace umb
