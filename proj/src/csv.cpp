#include "tempfrac/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace tempfrac {

std::string format_double(double value, int precision) {
    if (precision < 1 || precision > 17) {
        throw std::invalid_argument("format_double: precision must lie in [1,17]");
    }
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    return buffer;
}

void write_field_csv(std::ostream& out, const SolutionField& field, int precision) {
    out << "# x,t,u\n";
    const std::size_t n = field.time().intervals();
    const std::size_t K = field.space().intervals();
    for (std::size_t l = 0; l <= n; ++l) {
        const double t = field.time().point(l);
        for (std::size_t i = 0; i <= K; ++i) {
            out << format_double(field.space().point(i), precision) << ','
                << format_double(t, precision) << ','
                << format_double(field.untempered(l, i), precision) << '\n';
        }
    }
}

void write_current_csv(std::ostream& out, const CurrentTrace& trace, int precision) {
    out << "# t,I_over_q\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        out << format_double(trace.times[i], precision) << ','
            << format_double(trace.current[i], precision) << '\n';
    }
}

void write_records_csv(std::ostream& out, std::span<const ErrorRecord> records,
                       int precision) {
    out << "# n,r,alpha,lambda,h,E,EOC\n";
    for (const auto& rec : records) {
        out << rec.n << ',' << format_double(rec.r, precision) << ','
            << format_double(rec.alpha, precision) << ','
            << format_double(rec.lambda, precision) << ','
            << format_double(rec.h, precision) << ','
            << format_double(rec.max_abs_error, precision) << ',';
        if (rec.eoc) {
            out << format_double(*rec.eoc, precision);
        }
        out << '\n';
    }
}

void write_check_text(std::ostream& out, const TableCheck& check) {
    char line[160];
    out << "    n           E         ref   EOC    ref  status\n";
    for (const auto& row : check.rows) {
        const double eoc = row.record.eoc.value_or(std::nan(""));
        std::snprintf(line, sizeof(line), "%5zu  %.4e  %.4e  %5.2f  %5.2f  %s%s\n",
                      row.record.n, row.record.max_abs_error, row.expected.error, eoc,
                      row.expected.has_eoc ? row.expected.eoc : std::nan(""),
                      (row.error_checked && !row.error_ok) || (row.eoc_checked && !row.eoc_ok)
                          ? "FAIL"
                          : (row.error_checked || row.eoc_checked ? "ok" : "info"),
                      row.expected.informational ? " (reference value not checked)" : "");
        out << line;
    }
}

void write_fit_csv(std::ostream& out, const MeasuredTrace& measured,
                   std::span<const double> fitted, int precision) {
    out << "# t,I_measured,I_fitted\n";
    for (std::size_t i = 0; i < measured.times.size(); ++i) {
        out << format_double(measured.times[i], precision) << ','
            << format_double(measured.current[i], precision) << ',';
        if (i < fitted.size() && !std::isnan(fitted[i])) {
            out << format_double(fitted[i], precision);
        }
        out << '\n';
    }
}

}  // namespace tempfrac
