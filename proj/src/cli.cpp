#include "tempfrac/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <vector>

#include "tempfrac/calibration.hpp"
#include "tempfrac/config.hpp"
#include "tempfrac/csv.hpp"
#include "tempfrac/errors.hpp"
#include "tempfrac/observables.hpp"
#include "tempfrac/solver.hpp"
#include "tempfrac/verification.hpp"

namespace tempfrac {

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open output file " + path);
    }
    return file;
}

RunConfig config_or_default(const CliOptions& options) {
    if (options.config_path.empty()) {
        RunConfig config;
        config.validate();
        return config;
    }
    return parse_config(options.config_path);
}

int cmd_run(const CliOptions& options, std::ostream& out) {
    const RunConfig config = config_or_default(options);
    const SolutionField field =
        march(config.to_problem(), config.n, config.resolved_r(), config.K);
    const std::string path = config.output_path(config.field_path);
    auto file = open_output(path);
    write_field_csv(file, field, config.precision);
    out << "run: n=" << config.n << " r=" << format_double(config.resolved_r(), 6)
        << " K=" << config.K << " -> " << path << "\n";
    return 0;
}

int cmd_converge(const CliOptions& options, std::ostream& out) {
    const RunConfig config = config_or_default(options);
    const double h = options.fast ? 1e-3 : 1e-4;

    std::vector<const BenchmarkTable*> blocks;
    if (options.table == 1) {
        blocks = {&benchmark_tempered_graded(), &benchmark_tempered_uniform()};
    } else if (options.table == 2) {
        blocks = {&benchmark_plain_graded(), &benchmark_plain_uniform()};
    } else {
        throw ConfigError("converge: --table must be 1 or 2");
    }

    std::vector<ErrorRecord> all_records;
    bool pass = true;
    for (const BenchmarkTable* block : blocks) {
        out << "alpha=" << format_double(block->alpha, 6)
            << " lambda=" << format_double(block->lambda, 6)
            << " r=" << format_double(block->r, 6) << " h=" << format_double(h, 6) << "\n";
        const TableCheck check = check_benchmark(*block, h);
        write_check_text(out, check);
        for (const auto& row : check.rows) {
            all_records.push_back(row.record);
        }
        pass = pass && check.pass;
    }

    const std::string path = config.output_path(config.table_path);
    auto file = open_output(path);
    write_records_csv(file, all_records, config.precision);
    out << (pass ? "all checked rows within tolerance" : "TOLERANCE MISS") << " -> " << path
        << "\n";
    return (options.check && !pass) ? 1 : 0;
}

int cmd_current(const CliOptions& options, std::ostream& out, std::ostream& err) {
    const RunConfig config = config_or_default(options);
    const SolutionField field =
        march(config.to_problem(), config.n, config.resolved_r(), config.K);
    const CurrentTrace trace = transient_current(
        field,
        options.log_midpoint ? TimeAssignment::log_midpoint : TimeAssignment::node,
        options.centered ? CurrentDifference::centered : CurrentDifference::backward);

    const std::string csv_path = config.output_path(config.current_path);
    {
        auto file = open_output(csv_path);
        write_current_csv(file, trace, config.precision);
    }
    out << "current trace (" << trace.times.size() << " samples) -> " << csv_path << "\n";

    try {
        const IndexWindow pre =
            window_from_log_fractions(trace.times, options.pre_lo, options.pre_hi);
        const IndexWindow post =
            window_from_log_fractions(trace.times, options.post_lo, options.post_hi);
        const PowerLawFit fit = fit_power_laws(trace, pre, post);

        const std::string report_path = config.output_path(config.report_path);
        auto report = open_output(report_path);
        for (std::ostream* o : {static_cast<std::ostream*>(&report), &out}) {
            *o << "pre_window_indices: [" << fit.window_pre.begin << ", "
               << fit.window_pre.end << ")\n"
               << "post_window_indices: [" << fit.window_post.begin << ", "
               << fit.window_post.end << ")\n"
               << "pre_slope: " << format_double(fit.pre_slope, 6) << "\n"
               << "post_slope: " << format_double(fit.post_slope, 6) << "\n"
               << "transit_time: " << format_double(fit.transit_time, 6) << "\n"
               << "alpha_pre: " << format_double(fit.alpha_pre, 6) << "\n"
               << "alpha_post: " << format_double(fit.alpha_post, 6) << "\n";
        }
    } catch (const std::exception& e) {
        err << "power-law fit failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

const std::vector<std::string>& parameter_names() {
    static const std::vector<std::string> names = {"alpha", "lambda", "v",
                                                   "D",     "x_c",    "w"};
    return names;
}

int cmd_fit(const CliOptions& options, std::ostream& out, std::ostream& err) {
    if (options.data_path.empty()) {
        throw ConfigError("fit: --data is required");
    }
    const RunConfig config = config_or_default(options);
    const MeasuredTrace measured = load_measured_trace(options.data_path);

    FitProblem problem;
    problem.n = config.n;
    problem.r = config.resolved_r();
    problem.K = config.K;
    problem.L = config.L;

    CalibrationParams initial;
    initial.alpha = config.alpha;
    initial.lambda = config.lambda;
    initial.v = config.v;
    initial.D = config.D;
    initial.xc = config.gauss_xc;
    initial.width = config.gauss_w;

    auto set_by_name = [&](CalibrationParams& p, const std::string& name, double value) {
        auto a = p.as_array();
        const auto& names = parameter_names();
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) {
            throw ConfigError("fit: unknown parameter '" + name + "'");
        }
        a[static_cast<std::size_t>(it - names.begin())] = value;
        p = CalibrationParams::from_array(a);
    };
    for (const auto& [name, value] : options.init_values) {
        set_by_name(initial, name, value);
    }

    problem.frozen.fill(true);
    for (const auto& name : options.free_params) {
        const auto& names = parameter_names();
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) {
            throw ConfigError("fit: unknown free parameter '" + name + "'");
        }
        problem.frozen[static_cast<std::size_t>(it - names.begin())] = false;
    }

    FitResult best;
    bool have_result = false;
    for (std::size_t start = 0; start < std::max<std::size_t>(options.restarts, 1);
         ++start) {
        CalibrationParams point = initial;
        if (start > 0) {
            // Deterministic multi-start: alternate +-10%, +-20%, ... nudges
            // on the free coordinates.
            auto a = point.as_array();
            const double factor =
                1.0 + (start % 2 == 0 ? -1.0 : 1.0) * 0.1 * static_cast<double>((start + 1) / 2);
            for (std::size_t i = 0; i < CalibrationParams::kCount; ++i) {
                if (!problem.frozen[i]) a[i] *= factor;
            }
            point = CalibrationParams::from_array(a);
        }
        try {
            FitResult result = fit(problem, measured, point, options.max_iterations);
            if (!have_result || result.loss_value < best.loss_value) {
                best = std::move(result);
                have_result = true;
            }
        } catch (const std::invalid_argument& e) {
            err << "fit: start " << start << " rejected: " << e.what() << "\n";
        }
    }
    if (!have_result) {
        throw ConfigError("fit: no admissible start point");
    }

    const LossValue at_best = loss(best.best, problem, measured);
    const std::vector<double> fitted = fitted_curve(best.best, problem, measured);
    const std::string csv_path = config.output_path(config.fit_csv_path);
    {
        auto file = open_output(csv_path);
        write_fit_csv(file, measured, fitted, config.precision);
    }

    const std::string report_path = config.output_path(config.fit_report_path);
    auto report = open_output(report_path);
    for (std::ostream* o : {static_cast<std::ostream*>(&report), &out}) {
        *o << "source: " << measured.source << "\n"
           << "alpha: " << format_double(best.best.alpha, 8) << "\n"
           << "lambda: " << format_double(best.best.lambda, 8) << "\n"
           << "v: " << format_double(best.best.v, 8) << "\n"
           << "D: " << format_double(best.best.D, 8) << "\n"
           << "x_c: " << format_double(best.best.xc, 8) << "\n"
           << "w: " << format_double(best.best.width, 8) << "\n"
           << "loss: " << format_double(best.loss_value, 8) << "\n"
           << "offset: " << format_double(at_best.offset, 8) << "\n"
           << "samples_used: " << at_best.used << "\n"
           << "samples_skipped: " << at_best.skipped << "\n"
           << "iterations: " << best.iterations << "\n"
           << "converged: " << (best.converged ? "yes" : "no (iteration cap)") << "\n"
           << "refined_loss: " << format_double(best.refined_loss, 8) << "\n"
           << "refined_ratio: " << format_double(best.refined_ratio, 8) << "\n";
    }
    out << "fit curve -> " << csv_path << "\n";
    return 0;
}

}  // namespace

int dispatch(const CliOptions& options, std::ostream& out, std::ostream& err) {
    try {
        if (options.subcommand == "run") return cmd_run(options, out);
        if (options.subcommand == "converge") return cmd_converge(options, out);
        if (options.subcommand == "current") return cmd_current(options, out, err);
        if (options.subcommand == "fit") return cmd_fit(options, out, err);
        err << "unknown subcommand '" << options.subcommand << "'\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tempfrac
