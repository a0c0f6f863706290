#include "tempfrac/verification.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "tempfrac/fractional.hpp"
#include "tempfrac/solver.hpp"

namespace tempfrac {

double manufactured_solution(double alpha, double lambda, double x, double t) {
    return std::exp(-lambda * t) * std::pow(t, alpha) * x * (1.0 - x);
}

double manufactured_forcing(double alpha, double lambda, double v, double D, double x,
                            double t) {
    const double ta = std::pow(t, alpha);
    return std::exp(-lambda * t) *
           (gamma_eval(1.0 + alpha) * x * (1.0 - x) + v * ta * (1.0 - 2.0 * x) +
            2.0 * D * ta);
}

double optimal_grading(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("optimal_grading: alpha must lie in (0,1)");
    }
    return (2.0 - alpha) / alpha;
}

namespace {

double max_error_vs_manufactured(const SolutionField& field, double alpha,
                                 double lambda) {
    const std::size_t n = field.time().intervals();
    const std::size_t K = field.space().intervals();
    double worst = 0.0;
    for (std::size_t l = 0; l <= n; ++l) {
        const double t = field.time().point(l);
        const auto u = field.untempered_slice(l);
        for (std::size_t i = 0; i <= K; ++i) {
            const double exact =
                manufactured_solution(alpha, lambda, field.space().point(i), t);
            worst = std::max(worst, std::abs(exact - u[i]));
        }
    }
    return worst;
}

double run_single(double alpha, double lambda, double r, std::size_t K, std::size_t n) {
    ProblemSpec spec;
    spec.params = {alpha, lambda};
    spec.v = 1.0;
    spec.D = 1.0;
    spec.L = 1.0;
    spec.T = 1.0;
    spec.f = [alpha, lambda](double x, double t) {
        return manufactured_forcing(alpha, lambda, 1.0, 1.0, x, t);
    };
    const SolutionField field = march(spec, n, r, K);
    return max_error_vs_manufactured(field, alpha, lambda);
}

}  // namespace

std::vector<ErrorRecord> run_convergence_table(double alpha, double lambda, double r,
                                               double h,
                                               std::span<const std::size_t> n_list) {
    if (!(h > 0.0 && h < 1.0)) {
        throw std::invalid_argument("run_convergence_table: need 0 < h < 1");
    }
    const auto K = static_cast<std::size_t>(std::llround(1.0 / h));

    std::vector<std::future<double>> errors;
    errors.reserve(n_list.size());
    for (const std::size_t n : n_list) {
        errors.push_back(std::async(std::launch::async, run_single, alpha, lambda, r, K, n));
    }

    std::vector<ErrorRecord> records;
    records.reserve(n_list.size());
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        ErrorRecord rec;
        rec.n = n_list[idx];
        rec.r = r;
        rec.alpha = alpha;
        rec.lambda = lambda;
        rec.h = 1.0 / static_cast<double>(K);
        rec.max_abs_error = errors[idx].get();
        if (idx > 0 && rec.n > records[idx - 1].n && records[idx - 1].max_abs_error > 0.0 &&
            rec.max_abs_error > 0.0) {
            rec.eoc = std::log(records[idx - 1].max_abs_error / rec.max_abs_error) /
                      std::log(static_cast<double>(rec.n) /
                               static_cast<double>(records[idx - 1].n));
        }
        records.push_back(rec);
    }
    return records;
}

namespace {

BenchmarkTable make_table(double alpha, double lambda, double r, BenchmarkTable::Mode mode,
                          std::initializer_list<BenchmarkRow> rows) {
    BenchmarkTable table;
    table.alpha = alpha;
    table.lambda = lambda;
    table.r = r;
    table.mode = mode;
    table.rows = rows;
    return table;
}

}  // namespace

const BenchmarkTable& benchmark_tempered_graded() {
    static const BenchmarkTable table =
        make_table(0.5, 1.0, 3.0, BenchmarkTable::Mode::strict,
                   {{5, 2.72e-3, 0.0, false, false},
                    {10, 1.48e-3, 0.88, true, false},
                    {20, 7.57e-4, 0.97, true, false},
                    {40, 3.38e-4, 1.16, true, false},
                    {80, 1.39e-4, 1.29, true, false},
                    {160, 5.40e-5, 1.36, true, false}});
    return table;
}

const BenchmarkTable& benchmark_tempered_uniform() {
    static const BenchmarkTable table =
        make_table(0.5, 1.0, 1.0, BenchmarkTable::Mode::stagnation,
                   {{5, 3.86e-3, 0.0, false, false},
                    {10, 4.11e-3, -0.08, true, false},
                    {20, 3.92e-3, 0.07, true, false},
                    {40, 3.54e-3, 0.15, true, false},
                    {80, 3.05e-3, 0.21, true, false},
                    {160, 2.54e-3, 0.26, true, false}});
    return table;
}

const BenchmarkTable& benchmark_plain_graded() {
    static const BenchmarkTable table =
        make_table(0.25, 0.0, 7.0, BenchmarkTable::Mode::strict,
                   {{5, 4.09e-3, 0.0, false, false},
                    {10, 2.47e-3, 0.72, true, false},
                    {20, 1.12e-3, 1.14, true, false},
                    {40, 4.33e-4, 1.37, true, false},
                    {80, 1.53e-4, 1.50, true, false},
                    {160, 5.10e-5, 1.59, true, false}});
    return table;
}

const BenchmarkTable& benchmark_plain_uniform() {
    // The printed n=160 error (3.36e-2) breaks the monotone trend of the
    // block and its own order column; kept for display but not checked.
    static const BenchmarkTable table =
        make_table(0.25, 0.0, 1.0, BenchmarkTable::Mode::monotone,
                   {{5, 3.94e-3, 0.0, false, false},
                    {10, 3.90e-3, 0.01, true, false},
                    {20, 3.79e-3, 0.04, true, false},
                    {40, 3.66e-3, 0.05, true, false},
                    {80, 3.52e-3, 0.06, true, false},
                    {160, 3.36e-2, 0.07, true, true}});
    return table;
}

TableCheck check_benchmark(const BenchmarkTable& table, double h) {
    std::vector<std::size_t> n_list;
    n_list.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        n_list.push_back(row.n);
    }
    const auto records =
        run_convergence_table(table.alpha, table.lambda, table.r, h, n_list);

    constexpr double kErrorTolerance = 0.10;  // relative
    constexpr double kEocTolerance = 0.05;    // absolute
    constexpr double kStagnationCeiling = 0.30;

    TableCheck check;
    check.rows.resize(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto& row = check.rows[i];
        row.record = records[i];
        row.expected = table.rows[i];

        switch (table.mode) {
            case BenchmarkTable::Mode::strict:
                row.error_checked = true;
                row.error_ok = std::abs(records[i].max_abs_error - row.expected.error) <=
                               kErrorTolerance * row.expected.error;
                if (row.expected.has_eoc && records[i].eoc) {
                    row.eoc_checked = true;
                    row.eoc_ok = std::abs(*records[i].eoc - row.expected.eoc) <= kEocTolerance;
                }
                break;
            case BenchmarkTable::Mode::stagnation:
                if (i + 1 == records.size()) {
                    row.error_checked = true;
                    row.error_ok = std::abs(records[i].max_abs_error - row.expected.error) <=
                                   kErrorTolerance * row.expected.error;
                }
                if (records[i].eoc) {
                    row.eoc_checked = true;
                    row.eoc_ok = *records[i].eoc <= kStagnationCeiling;
                }
                break;
            case BenchmarkTable::Mode::monotone:
                if (i > 0) {
                    row.error_checked = true;
                    row.error_ok = records[i].max_abs_error <=
                                   records[i - 1].max_abs_error * (1.0 + 1e-9);
                }
                break;
        }
        if ((row.error_checked && !row.error_ok) || (row.eoc_checked && !row.eoc_ok)) {
            check.pass = false;
        }
    }
    return check;
}

}  // namespace tempfrac
