#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tempfrac/solver.hpp"

namespace tempfrac {

/// Charge-normalized transient current I(t_l)/q over the run, together with
/// the charge moment Q(t_l) it is differenced from. q is normalized to 1.
struct CurrentTrace {
    std::vector<double> times;    // one per current sample, l = 1..n
    std::vector<double> current;  // I(t_l)/q
    std::vector<double> charge;   // Q(t_l), l = 0..n
};

enum class TimeAssignment { node, log_midpoint };
enum class CurrentDifference { backward, centered };

/// Trapezoidal quadrature of (L - x) u(x, t_l) over the spatial mesh.
/// Exact per cell for integrands linear in x.
double charge_moment(const SolutionField& field, std::size_t l);

/// I(t_l)/q = -dQ/dt by backward difference on the graded mesh (default),
/// or by the three-point nonuniform centered difference. Samples start at
/// l = 1 and are stamped at t_l or at the in-log midpoint of the step.
CurrentTrace transient_current(const SolutionField& field,
                               TimeAssignment assignment = TimeAssignment::node,
                               CurrentDifference difference = CurrentDifference::backward);

/// Half-open index range [begin, end) into a CurrentTrace.
struct IndexWindow {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end > begin ? end - begin : 0; }
};

/// Two log-log regime fits and the transit time where the fitted lines cross.
struct PowerLawFit {
    double pre_slope = 0.0;
    double pre_intercept = 0.0;
    double post_slope = 0.0;
    double post_intercept = 0.0;
    double transit_time = 0.0;
    double alpha_pre = 0.0;   // pre_slope = -1 + alpha_pre
    double alpha_post = 0.0;  // post_slope = -1 - alpha_post
    IndexWindow window_pre;
    IndexWindow window_post;
};

/// Least-squares line fits in (ln t, ln I) over the two windows. The windows
/// must be ordered, disjoint and hold at least 3 strictly positive samples.
PowerLawFit fit_power_laws(const CurrentTrace& trace, IndexWindow window_pre,
                           IndexWindow window_post);

/// Index window covering the [f0, f1] fraction of the log-time axis.
IndexWindow window_from_log_fractions(std::span<const double> times, double f0, double f1);

}  // namespace tempfrac
