#pragma once

namespace cfx {

/// Command-line entry point (subcommands gen | compile | encode | predict |
/// explain | mcs | bench). Returns the process exit status: 0 success,
/// 1 usage error, 2 no counterfactual exists, 3 file or parse error.
int run(int argc, const char* const* argv);

} // namespace cfx
