#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tempfrac {

/// One row of a time-convergence study on the manufactured problem.
struct ErrorRecord {
    std::size_t n = 0;
    double r = 1.0;
    double alpha = 0.5;
    double lambda = 0.0;
    double h = 0.0;
    double max_abs_error = 0.0;  // max over all mesh points
    std::optional<double> eoc;   // vs the previous row
};

/// Exact solution of the benchmark problem: e^{-lambda t} t^alpha x(1-x)
/// on [0,1]x[0,1] with v = D = 1 and zero initial data.
double manufactured_solution(double alpha, double lambda, double x, double t);

/// Forcing that makes manufactured_solution solve the tempered model:
/// f = e^{-lambda t} [Gamma(1+alpha) x(1-x) + v t^alpha (1-2x) + 2 D t^alpha].
double manufactured_forcing(double alpha, double lambda, double v, double D, double x,
                            double t);

/// Grading exponent (2 - alpha)/alpha that restores the full time order.
double optimal_grading(double alpha);

/// One march per n on the manufactured problem (v = D = L = T = 1); records
/// carry the max-abs error and the chained experimental order.
std::vector<ErrorRecord> run_convergence_table(double alpha, double lambda, double r,
                                               double h,
                                               std::span<const std::size_t> n_list);

/// Published benchmark row: expected max-abs error and order for one n.
struct BenchmarkRow {
    std::size_t n = 0;
    double error = 0.0;
    double eoc = 0.0;
    bool has_eoc = false;
    bool informational = false;  // excluded from pass/fail (suspected misprint)
};

struct BenchmarkTable {
    /// strict     - every row's error to 10% relative, every order to +-0.05
    /// stagnation - last row's error to 10%, every computed order <= 0.30
    /// monotone   - computed errors must not increase; rows are informational
    enum class Mode { strict, stagnation, monotone };

    double alpha = 0.5;
    double lambda = 0.0;
    double r = 1.0;
    Mode mode = Mode::strict;
    std::vector<BenchmarkRow> rows;
};

/// The four published benchmark blocks: {alpha=0.5, lambda=1} at r=3 and
/// r=1, and {alpha=0.25, lambda=0} at r=7 and r=1.
const BenchmarkTable& benchmark_tempered_graded();
const BenchmarkTable& benchmark_tempered_uniform();
const BenchmarkTable& benchmark_plain_graded();
const BenchmarkTable& benchmark_plain_uniform();

struct RowCheck {
    ErrorRecord record;
    BenchmarkRow expected;
    bool error_checked = false;
    bool error_ok = true;
    bool eoc_checked = false;
    bool eoc_ok = true;
};

struct TableCheck {
    std::vector<RowCheck> rows;
    bool pass = true;
};

/// Run the block's n column at spatial step h and compare with the
/// published values under the block's mode.
TableCheck check_benchmark(const BenchmarkTable& table, double h);

}  // namespace tempfrac
