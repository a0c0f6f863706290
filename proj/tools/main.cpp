#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "tempfrac/cli.hpp"

namespace {

std::pair<std::string, double> parse_assignment(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw CLI::ValidationError("--init", "expected name=value, got '" + text + "'");
    }
    return {text.substr(0, eq), std::stod(text.substr(eq + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    tempfrac::CliOptions options;

    CLI::App app{"Tempered time-fractional advection-diffusion solver and "
                 "time-of-flight toolkit"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "solve the configured problem and dump the field");
    run->add_option("-c,--config", options.config_path, "INI config file")->required();

    auto* converge =
        app.add_subcommand("converge", "reproduce a published convergence block");
    converge->add_option("-c,--config", options.config_path,
                         "INI config file (output paths/precision)");
    converge->add_option("--table", options.table, "published block: 1 or 2")
        ->check(CLI::Range(1, 2));
    converge->add_flag("--fast", options.fast, "h = 1e-3 instead of 1e-4");
    bool no_check = false;
    converge->add_flag("--no-check", no_check, "emit the table without pass/fail gating");

    auto* current = app.add_subcommand(
        "current", "solve, extract the transient current and fit the two regimes");
    current->add_option("-c,--config", options.config_path, "INI config file")->required();
    std::vector<double> pre{options.pre_lo, options.pre_hi};
    std::vector<double> post{options.post_lo, options.post_hi};
    current->add_option("--pre", pre, "pre-transit window as log-axis fractions")
        ->expected(2);
    current->add_option("--post", post, "post-transit window as log-axis fractions")
        ->expected(2);
    current->add_flag("--centered", options.centered,
                      "three-point nonuniform time derivative");
    current->add_flag("--log-midpoint", options.log_midpoint,
                      "stamp samples at the in-log step midpoint");

    auto* fit = app.add_subcommand("fit", "calibrate model parameters to a measured trace");
    fit->add_option("-c,--config", options.config_path,
                    "INI config file (initial guess and forward grid)");
    fit->add_option("--data", options.data_path, "measured trace CSV (t,I)")->required();
    std::vector<std::string> init_args;
    fit->add_option("--init", init_args, "override start values, e.g. alpha=0.6");
    fit->add_option("--free", options.free_params,
                    "parameters to fit (default: alpha lambda v D)");
    fit->add_option("--max-iterations", options.max_iterations, "simplex iteration cap");
    fit->add_option("--restarts", options.restarts, "deterministic multi-start count");

    CLI11_PARSE(app, argc, argv);

    options.subcommand = app.get_subcommands().front()->get_name();
    options.check = !no_check;
    options.pre_lo = pre[0];
    options.pre_hi = pre[1];
    options.post_lo = post[0];
    options.post_hi = post[1];
    try {
        for (const auto& text : init_args) {
            options.init_values.push_back(parse_assignment(text));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    return tempfrac::dispatch(options, std::cout, std::cerr);
}
