#pragma once

#include <tropopt/error.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tropopt::cli {

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

struct Options {
    std::string input = "-";
    std::string output = "-";
    std::uint64_t budget = 1'000'000;
    bool exhaustive = false;
    bool compact = false;
};

struct VerifyOptions : Options {
    std::vector<std::string> x; ///< candidate vectors, e.g. "1,2"
    std::vector<std::string> y; ///< finish times paired with x (schedules only)
    std::string solution;       ///< solution document to check, if any
};

struct PlotOptions : Options {
    double window = 10.0;
};

enum ExitCode : int {
    Ok = 0,
    VerificationFailed = 1,
    BadInput = 2,
    Infeasible = 3,
    BudgetExhausted = 4,
};

int exit_code(ErrorCode code);

int cmd_solve(const Options& opts, Streams io);
int cmd_verify(const VerifyOptions& opts, Streams io);
int cmd_enumerate(const Options& opts, Streams io);
int cmd_plot(const PlotOptions& opts, Streams io);

/// Parses argv-style arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, Streams io);

} // namespace tropopt::cli
