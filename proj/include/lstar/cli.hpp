#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lstar::cli {

enum ExitCode : int {
    Ok = 0,
    Usage = 1,
    Validation = 2,
    Tolerance = 3,
    StatisticalFailure = 4,
    Internal = 5,
};

/// Environment variable that overrides the default tolerance of 1e-10.
inline constexpr const char* kTolEnv = "LSTAR_TOL";

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Library operation, the subcommand that reaches it and an argument list
/// that exercises it.
struct Route {
    std::string_view operation;
    std::string_view command;
    std::vector<std::string> example;
};

const std::vector<Route>& routes();

} // namespace lstar::cli
