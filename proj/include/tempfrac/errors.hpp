#pragma once

#include <stdexcept>
#include <string>

namespace tempfrac {

/// Thrown by march() when the spatial step violates h < 2D/v.
/// Carries the largest admissible step so callers can retry.
class StabilityError : public std::runtime_error {
public:
    StabilityError(double hmax, double h)
        : std::runtime_error("unstable spatial step h = " + std::to_string(h) +
                             "; stability requires h < 2D/v = " + std::to_string(hmax)),
          hmax_(hmax) {}

    double hmax() const noexcept { return hmax_; }

private:
    double hmax_;
};

/// Pivot underflow in the tridiagonal solve. Cannot occur for the
/// diagonally dominant systems the scheme produces.
class NumericalBreakdownError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Config-file parse or validation failure; line < 0 means "not tied to a line".
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& message, int line = -1)
        : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + message
                                       : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Power-law fit windows whose fitted slopes coincide (no intersection).
class DegenerateWindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A fit window contains a non-positive current sample (log-space fit impossible).
class NonPositiveSampleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tempfrac
