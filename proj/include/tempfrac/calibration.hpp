#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tempfrac/observables.hpp"
#include "tempfrac/solver.hpp"

namespace tempfrac {

/// Measured transient current: strictly increasing times, positive samples.
struct MeasuredTrace {
    std::vector<double> times;
    std::vector<double> current;
    std::string source;

    void validate() const;
};

/// Two-column CSV (t,I), '#' comments, blank lines ignored.
MeasuredTrace load_measured_trace(const std::string& path);
MeasuredTrace parse_measured_trace(const std::string& text, const std::string& source);

/// Gaussian initial profile A exp(-(x-xc)^2 / (2 w^2)).
std::function<double(double)> gaussian_packet(double xc, double w, double A);

/// Point in calibration space. The trace amplitude is profiled out of the
/// loss analytically, so no amplitude coordinate appears here.
struct CalibrationParams {
    double alpha = 0.5;
    double lambda = 0.0;
    double v = 1.0;
    double D = 1.0;
    double xc = 0.2;
    double width = 0.05;

    static constexpr std::size_t kCount = 6;
    std::array<double, kCount> as_array() const { return {alpha, lambda, v, D, xc, width}; }
    static CalibrationParams from_array(const std::array<double, kCount>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }
};

/// Bounds, frozen coordinates and the fixed forward discretization used
/// while fitting. Candidates violating bounds or the stability bound
/// h < 2D/v are penalized without simulating.
struct FitProblem {
    CalibrationParams lower{0.01, 0.0, 1e-6, 1e-9, 0.01, 1e-4};
    CalibrationParams upper{0.99, 50.0, 1e3, 1e3, 0.99, 0.5};
    std::array<bool, CalibrationParams::kCount> frozen{};  // keep initial values

    std::size_t n = 100;
    double r = 3.0;
    std::size_t K = 100;
    double L = 1.0;
    double T = 0.0;  // forward horizon; <= 0 means max measured time
};

struct LossValue {
    double value = 0.0;
    double offset = 0.0;          // fitted additive log offset c*
    std::size_t used = 0;         // samples compared
    std::size_t skipped = 0;      // out of range or non-positive simulated current
    bool penalized = false;       // bounds or stability violation; not simulated
};

/// Log-space least squares between the simulated and measured currents with
/// the amplitude offset profiled out. Simulated ln I is interpolated onto
/// the measured ln t samples (linear in log-log).
LossValue loss(const CalibrationParams& candidate, const FitProblem& problem,
               const MeasuredTrace& measured);

/// Simulated trace for a candidate on the problem's forward grid.
CurrentTrace simulate_trace(const CalibrationParams& candidate, const FitProblem& problem,
                            double horizon);

/// Fitted current on the measured time stamps after removing the fitted
/// log offset: exp(ln I_sim(t) - c*). NaN where the sample was skipped.
std::vector<double> fitted_curve(const CalibrationParams& candidate,
                                 const FitProblem& problem, const MeasuredTrace& measured);

struct FitResult {
    CalibrationParams best;
    double loss_value = 0.0;
    std::size_t iterations = 0;
    std::vector<double> loss_trace;  // best-so-far per iteration
    bool converged = false;
    double refined_loss = 0.0;   // loss re-evaluated at doubled resolution
    double refined_ratio = 0.0;  // |refined - loss| / max(loss, eps)
};

/// Nelder-Mead descent over the free coordinates of the penalized loss.
/// Stops when the simplex log-loss spread falls below 1e-6 or after
/// max_iterations; the best-seen point is returned either way.
FitResult fit(const FitProblem& problem, const MeasuredTrace& measured,
              const CalibrationParams& initial, std::size_t max_iterations = 500);

}  // namespace tempfrac
