#pragma once

#include <functional>
#include <string>

#include "tempfrac/solver.hpp"

namespace tempfrac {

/// Validated run configuration assembled from an INI-style file, environment
/// overrides (TEMPFRAC_<SECTION>_<KEY>) and defaults.
///
/// Sections and keys:
///   [model]          alpha lambda v D L T
///   [discretization] n r K            (r may be "auto" = (2-alpha)/alpha)
///   [initial]        preset x_c w A   (preset: zero | gaussian)
///   [forcing]        preset           (preset: zero | manufactured)
///   [output]         dir field current report table fit_csv fit_report precision
/// Keys are unique across sections, so a file may omit section headers.
struct RunConfig {
    double alpha = 0.5;
    double lambda = 0.0;
    double v = 1.0;
    double D = 1.0;
    double L = 1.0;
    double T = 1.0;

    std::size_t n = 100;
    std::size_t K = 100;
    double r = 3.0;
    bool r_auto = true;

    enum class InitKind { zero, gaussian, custom };
    InitKind init = InitKind::zero;
    double gauss_xc = 0.2;
    double gauss_w = 0.015811388300841896;  // exponent 2e3 packet
    double gauss_A = 1.0;
    /// Programmatic initial-profile hook; used when init == custom.
    /// Not settable from a file.
    std::function<double(double)> custom_g;

    enum class ForcingKind { zero, manufactured };
    ForcingKind forcing = ForcingKind::zero;

    std::string out_dir = ".";
    std::string field_path = "field.csv";
    std::string current_path = "current.csv";
    std::string report_path = "report.txt";
    std::string table_path = "table.csv";
    std::string fit_csv_path = "fit.csv";
    std::string fit_report_path = "fit_report.txt";
    int precision = 17;

    double resolved_r() const { return r_auto ? (2.0 - alpha) / alpha : r; }
    std::function<double(double)> initial_profile() const;
    ProblemSpec to_problem() const;
    void validate() const;

    std::string output_path(const std::string& file) const;
};

/// Parse, apply TEMPFRAC_* environment overrides, validate.
RunConfig parse_config(const std::string& path);

/// Parse from text without touching the environment (tests).
RunConfig parse_config_text(const std::string& text);

}  // namespace tempfrac
