#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tempfrac {

/// Parsed command line; tools/main.cpp fills this via CLI11 and tests call
/// dispatch() with it directly.
struct CliOptions {
    std::string subcommand;  // run | converge | current | fit
    std::string config_path;

    // converge
    int table = 1;      // published block 1 or 2
    bool fast = false;  // h = 1e-3 instead of 1e-4
    bool check = true;  // nonzero exit when a checked row misses tolerance

    // current
    double pre_lo = 0.05, pre_hi = 0.30;
    double post_lo = 0.60, post_hi = 0.95;
    bool centered = false;
    bool log_midpoint = false;

    // fit
    std::string data_path;
    std::vector<std::pair<std::string, double>> init_values;  // name -> start value
    std::vector<std::string> free_params = {"alpha", "lambda", "v", "D"};
    std::size_t max_iterations = 500;
    std::size_t restarts = 1;
};

/// Run one subcommand end to end; returns the process exit status.
/// Reports and progress go to out, diagnostics to err.
int dispatch(const CliOptions& options, std::ostream& out, std::ostream& err);

}  // namespace tempfrac
