#pragma once

#include <iosfwd>

namespace alphamag::cli {

/// Entry point of the `alphamag` tool. Machine-readable results go to `out`
/// (unless --out names a file), diagnostics and progress to `err`.
/// Returns 0 on success, 1 on computational failure, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace alphamag::cli
