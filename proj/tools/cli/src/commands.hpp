#pragma once

#include <ostream>

namespace adtrw::cli {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitEnvelope = 2;

/// Parses argv, resolves the subcommand's configuration (defaults, then
/// --config file, then flags) and runs it. "-" outputs go to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adtrw::cli
