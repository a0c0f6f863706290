#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "tempfrac/calibration.hpp"
#include "tempfrac/observables.hpp"
#include "tempfrac/solver.hpp"
#include "tempfrac/verification.hpp"

namespace tempfrac {

/// Shortest representation that round-trips at the given significant digits.
std::string format_double(double value, int precision = 17);

/// Columns x,t,u over the whole lattice, one row per (l, i), header as comment.
void write_field_csv(std::ostream& out, const SolutionField& field, int precision = 17);

/// Columns t,I_over_q; ingestible by load_measured_trace.
void write_current_csv(std::ostream& out, const CurrentTrace& trace, int precision = 17);

/// Columns n,r,alpha,lambda,h,E,EOC.
void write_records_csv(std::ostream& out, std::span<const ErrorRecord> records,
                       int precision = 17);

/// Aligned text table with per-row status against the published block.
void write_check_text(std::ostream& out, const TableCheck& check);

/// Columns t,I_measured,I_fitted.
void write_fit_csv(std::ostream& out, const MeasuredTrace& measured,
                   std::span<const double> fitted, int precision = 17);

}  // namespace tempfrac
