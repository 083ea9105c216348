#pragma once

#include <ostream>

namespace qfree::cli {

/// Runs one subcommand and prints its JSON report on `out`.
/// Returns 0 when every check passed, 1 on a failed check, 2 on a usage,
/// parse or input error (with a message on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfree::cli
