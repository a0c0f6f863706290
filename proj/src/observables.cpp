#include "tempfrac/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tempfrac/errors.hpp"
#include "tempfrac/numerics.hpp"

namespace tempfrac {

double charge_moment(const SolutionField& field, std::size_t l) {
    const auto& space = field.space();
    const std::size_t K = space.intervals();
    const double L = space.domain_length();
    const auto u = field.untempered_slice(l);

    KahanSum sum;
    for (std::size_t i = 0; i <= K; ++i) {
        const double w = (i == 0 || i == K) ? 0.5 : 1.0;
        sum.add(w * (L - space.point(i)) * u[i]);
    }
    return sum.value() * space.step();
}

CurrentTrace transient_current(const SolutionField& field, TimeAssignment assignment,
                               CurrentDifference difference) {
    const auto& mesh = field.time();
    const std::size_t n = mesh.intervals();
    if (n < 2) {
        throw std::invalid_argument("transient_current: need n >= 2 time steps");
    }

    CurrentTrace trace;
    trace.charge.resize(n + 1);
    for (std::size_t l = 0; l <= n; ++l) {
        trace.charge[l] = charge_moment(field, l);
    }

    trace.times.resize(n);
    trace.current.resize(n);
    for (std::size_t l = 1; l <= n; ++l) {
        double value;
        if (difference == CurrentDifference::centered && l < n) {
            // Three-point derivative on the nonuniform mesh.
            const double tl = mesh.length(l - 1);
            const double tr = mesh.length(l);
            const double q0 = trace.charge[l - 1];
            const double q1 = trace.charge[l];
            const double q2 = trace.charge[l + 1];
            value = -(q0 * (-tr / (tl * (tl + tr))) + q1 * ((tr - tl) / (tl * tr)) +
                      q2 * (tl / (tr * (tl + tr))));
        } else {
            value = -(trace.charge[l] - trace.charge[l - 1]) / mesh.length(l - 1);
        }
        double stamp = mesh.point(l);
        if (assignment == TimeAssignment::log_midpoint && l > 1) {
            stamp = std::sqrt(mesh.point(l - 1) * mesh.point(l));
        }
        trace.times[l - 1] = stamp;
        trace.current[l - 1] = value;
    }
    return trace;
}

namespace {

LineFit fit_window(const CurrentTrace& trace, IndexWindow window, const char* name) {
    if (window.end > trace.times.size() || window.begin >= window.end) {
        throw std::invalid_argument(std::string("fit_power_laws: ") + name +
                                    " window out of range");
    }
    if (window.size() < 3) {
        throw std::invalid_argument(std::string("fit_power_laws: ") + name +
                                    " window needs at least 3 samples");
    }
    std::vector<double> lt, li;
    lt.reserve(window.size());
    li.reserve(window.size());
    for (std::size_t i = window.begin; i < window.end; ++i) {
        if (!(trace.current[i] > 0.0)) {
            throw NonPositiveSampleError(std::string("fit_power_laws: ") + name +
                                         " window sample " + std::to_string(i) +
                                         " is not positive");
        }
        lt.push_back(std::log(trace.times[i]));
        li.push_back(std::log(trace.current[i]));
    }
    return fit_line(lt, li);
}

}  // namespace

PowerLawFit fit_power_laws(const CurrentTrace& trace, IndexWindow window_pre,
                           IndexWindow window_post) {
    if (window_pre.end > window_post.begin) {
        throw std::invalid_argument(
            "fit_power_laws: windows must be disjoint with the pre window first");
    }
    const LineFit pre = fit_window(trace, window_pre, "pre");
    const LineFit post = fit_window(trace, window_post, "post");

    if (std::abs(pre.slope - post.slope) < 1e-9) {
        throw DegenerateWindowError(
            "fit_power_laws: fitted slopes coincide; no intersection");
    }

    PowerLawFit fit;
    fit.pre_slope = pre.slope;
    fit.pre_intercept = pre.intercept;
    fit.post_slope = post.slope;
    fit.post_intercept = post.intercept;
    fit.transit_time = std::exp((post.intercept - pre.intercept) / (pre.slope - post.slope));
    fit.alpha_pre = 1.0 + pre.slope;
    fit.alpha_post = -1.0 - post.slope;
    fit.window_pre = window_pre;
    fit.window_post = window_post;
    return fit;
}

IndexWindow window_from_log_fractions(std::span<const double> times, double f0, double f1) {
    if (times.empty()) {
        throw std::invalid_argument("window_from_log_fractions: empty trace");
    }
    if (!(f0 >= 0.0 && f1 <= 1.0 && f0 < f1)) {
        throw std::invalid_argument("window_from_log_fractions: need 0 <= f0 < f1 <= 1");
    }
    if (!(times.front() > 0.0)) {
        throw std::invalid_argument("window_from_log_fractions: times must be positive");
    }
    const double lo = std::log(times.front());
    const double hi = std::log(times.back());
    const double a = lo + f0 * (hi - lo);
    const double b = lo + f1 * (hi - lo);

    IndexWindow window;
    window.begin = times.size();
    window.end = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double lt = std::log(times[i]);
        if (lt >= a && lt <= b) {
            window.begin = std::min(window.begin, i);
            window.end = std::max(window.end, i + 1);
        }
    }
    if (window.begin >= window.end) {
        throw std::invalid_argument("window_from_log_fractions: no samples in range");
    }
    return window;
}

}  // namespace tempfrac
