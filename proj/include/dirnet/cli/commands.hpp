// commands.hpp: subcommand dispatch for the dirnet tool

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dirnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitWarning = 2;

// args excludes the program name. Never throws; failures map to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirnet::cli
