#include "tempfrac/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "tempfrac/errors.hpp"

namespace tempfrac {

void MeasuredTrace::validate() const {
    if (times.size() != current.size()) {
        throw std::invalid_argument("measured trace: times/current length mismatch");
    }
    if (times.size() < 2) {
        throw std::invalid_argument("measured trace: need at least 2 samples");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(current[i] > 0.0)) {
            throw std::invalid_argument("measured trace: current sample " +
                                        std::to_string(i) + " is not positive");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw std::invalid_argument("measured trace: times must increase strictly");
        }
    }
}

MeasuredTrace parse_measured_trace(const std::string& text, const std::string& source) {
    MeasuredTrace trace;
    trace.source = source;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("expected 't,I' in " + source, line_no);
        }
        try {
            std::size_t used = 0;
            const double t = std::stod(line.substr(0, comma), &used);
            const double i = std::stod(line.substr(comma + 1));
            (void)used;
            trace.times.push_back(t);
            trace.current.push_back(i);
        } catch (const std::exception&) {
            throw ConfigError("malformed number in " + source, line_no);
        }
    }
    trace.validate();
    return trace;
}

MeasuredTrace load_measured_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open measured-trace file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_measured_trace(buffer.str(), path);
}

std::function<double(double)> gaussian_packet(double xc, double w, double A) {
    if (!(w > 0.0)) {
        throw std::invalid_argument("gaussian_packet: width must be positive");
    }
    return [xc, w, A](double x) {
        const double z = (x - xc) / w;
        return A * std::exp(-0.5 * z * z);
    };
}

namespace {

constexpr double kPenaltyBase = 1e15;

/// Total relative bound/stability violation; 0 when feasible.
double violation(const CalibrationParams& p, const FitProblem& problem) {
    const auto x = p.as_array();
    const auto lo = problem.lower.as_array();
    const auto hi = problem.upper.as_array();
    double total = 0.0;
    for (std::size_t i = 0; i < CalibrationParams::kCount; ++i) {
        const double scale = std::max({std::abs(lo[i]), std::abs(hi[i]), 1e-12});
        if (x[i] < lo[i]) total += (lo[i] - x[i]) / scale;
        if (x[i] > hi[i]) total += (x[i] - hi[i]) / scale;
    }
    const double h = problem.L / static_cast<double>(problem.K);
    const double hmax = 2.0 * p.D / p.v;
    if (!(h < hmax)) {
        total += h / hmax;
    }
    return total;
}

/// ln I of the simulated trace at time t, linear in log-log between nodes;
/// empty when t falls outside the trace or a bracketing sample is not positive.
std::optional<double> log_current_at(const CurrentTrace& sim, double t) {
    if (t < sim.times.front() || t > sim.times.back()) {
        return std::nullopt;
    }
    const auto it = std::lower_bound(sim.times.begin(), sim.times.end(), t);
    const std::size_t hi_idx = static_cast<std::size_t>(it - sim.times.begin());
    if (sim.times[hi_idx] == t) {
        if (!(sim.current[hi_idx] > 0.0)) return std::nullopt;
        return std::log(sim.current[hi_idx]);
    }
    const std::size_t lo_idx = hi_idx - 1;
    if (!(sim.current[lo_idx] > 0.0 && sim.current[hi_idx] > 0.0)) {
        return std::nullopt;
    }
    const double lt = std::log(t);
    const double lt0 = std::log(sim.times[lo_idx]);
    const double lt1 = std::log(sim.times[hi_idx]);
    const double li0 = std::log(sim.current[lo_idx]);
    const double li1 = std::log(sim.current[hi_idx]);
    return li0 + (li1 - li0) * (lt - lt0) / (lt1 - lt0);
}

}  // namespace

CurrentTrace simulate_trace(const CalibrationParams& candidate, const FitProblem& problem,
                            double horizon) {
    ProblemSpec spec;
    spec.params = {candidate.alpha, candidate.lambda};
    spec.v = candidate.v;
    spec.D = candidate.D;
    spec.L = problem.L;
    spec.T = horizon;
    spec.g = gaussian_packet(candidate.xc, candidate.width, 1.0);
    const SolutionField field = march(spec, problem.n, problem.r, problem.K);
    return transient_current(field);
}

LossValue loss(const CalibrationParams& candidate, const FitProblem& problem,
               const MeasuredTrace& measured) {
    measured.validate();
    LossValue result;

    const double infeasible = violation(candidate, problem);
    if (infeasible > 0.0) {
        result.value = kPenaltyBase * (1.0 + infeasible);
        result.penalized = true;
        result.skipped = measured.times.size();
        return result;
    }

    const double horizon = problem.T > 0.0 ? problem.T : measured.times.back();
    const CurrentTrace sim = simulate_trace(candidate, problem, horizon);

    // Residuals d_i = ln I_sim(t_i) - ln I_meas(t_i), interpolated log-log.
    std::vector<double> d;
    d.reserve(measured.times.size());
    for (std::size_t m = 0; m < measured.times.size(); ++m) {
        const auto ln_sim = log_current_at(sim, measured.times[m]);
        if (!ln_sim) {
            ++result.skipped;
            continue;
        }
        d.push_back(*ln_sim - std::log(measured.current[m]));
    }

    result.used = d.size();
    if (d.size() < 2) {
        result.value = kPenaltyBase;
        result.penalized = true;
        return result;
    }

    double mean = 0.0;
    for (const double v : d) mean += v;
    mean /= static_cast<double>(d.size());
    double ss = 0.0;
    for (const double v : d) ss += (v - mean) * (v - mean);

    result.offset = mean;
    result.value = ss;
    return result;
}

std::vector<double> fitted_curve(const CalibrationParams& candidate,
                                 const FitProblem& problem, const MeasuredTrace& measured) {
    const LossValue value = loss(candidate, problem, measured);
    std::vector<double> fitted(measured.times.size(),
                               std::numeric_limits<double>::quiet_NaN());
    if (value.penalized) {
        return fitted;
    }
    const double horizon = problem.T > 0.0 ? problem.T : measured.times.back();
    const CurrentTrace sim = simulate_trace(candidate, problem, horizon);
    for (std::size_t m = 0; m < measured.times.size(); ++m) {
        if (const auto ln_sim = log_current_at(sim, measured.times[m])) {
            fitted[m] = std::exp(*ln_sim - value.offset);
        }
    }
    return fitted;
}

namespace {

struct ReducedSpace {
    std::vector<std::size_t> free_index;
    CalibrationParams base;

    std::vector<double> reduce(const CalibrationParams& p) const {
        const auto a = p.as_array();
        std::vector<double> x(free_index.size());
        for (std::size_t i = 0; i < free_index.size(); ++i) x[i] = a[free_index[i]];
        return x;
    }

    CalibrationParams expand(const std::vector<double>& x) const {
        auto a = base.as_array();
        for (std::size_t i = 0; i < free_index.size(); ++i) a[free_index[i]] = x[i];
        return CalibrationParams::from_array(a);
    }
};

double log_spread(const std::vector<double>& values) {
    double lo = values.front(), hi = values.front();
    for (const double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return std::log(hi + 1e-300) - std::log(lo + 1e-300);
}

}  // namespace

FitResult fit(const FitProblem& problem, const MeasuredTrace& measured,
              const CalibrationParams& initial, std::size_t max_iterations) {
    measured.validate();
    if (violation(initial, problem) > 0.0) {
        throw std::invalid_argument("fit: initial point violates bounds or stability");
    }

    ReducedSpace space;
    space.base = initial;
    for (std::size_t i = 0; i < CalibrationParams::kCount; ++i) {
        if (!problem.frozen[i]) space.free_index.push_back(i);
    }
    if (space.free_index.empty()) {
        throw std::invalid_argument("fit: no free parameters");
    }
    const std::size_t dim = space.free_index.size();

    const auto objective = [&](const std::vector<double>& x) {
        return loss(space.expand(x), problem, measured).value;
    };

    // Initial simplex: 5% relative nudges (absolute for zero coordinates).
    std::vector<std::vector<double>> simplex;
    simplex.push_back(space.reduce(initial));
    for (std::size_t i = 0; i < dim; ++i) {
        auto vertex = simplex[0];
        vertex[i] = vertex[i] != 0.0 ? 1.05 * vertex[i] : 0.00025;
        simplex.push_back(vertex);
    }
    std::vector<double> f(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i) f[i] = objective(simplex[i]);

    FitResult result;
    auto record_best = [&](const std::vector<double>& x, double fx) {
        if (result.loss_trace.empty() || fx < result.loss_value) {
            result.best = space.expand(x);
            result.loss_value = fx;
        }
    };
    {
        std::size_t b = 0;
        for (std::size_t i = 1; i < f.size(); ++i)
            if (f[i] < f[b]) b = i;
        result.best = space.expand(simplex[b]);
        result.loss_value = f[b];
    }

    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
    constexpr double kSpreadTol = 1e-6;
    constexpr double kAbsoluteFloor = 1e-12;

    std::vector<std::size_t> order(simplex.size());
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[order.size() - 2];

        record_best(simplex[best], f[best]);
        result.loss_trace.push_back(result.loss_value);
        result.iterations = iter + 1;

        if (log_spread(f) < kSpreadTol || f[best] < kAbsoluteFloor) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < simplex.size(); ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coeff) {
            std::vector<double> x(dim);
            for (std::size_t d = 0; d < dim; ++d) {
                x[d] = centroid[d] + coeff * (centroid[d] - simplex[worst][d]);
            }
            return x;
        };

        const auto reflected = blend(kReflect);
        const double f_reflected = objective(reflected);

        if (f_reflected < f[best]) {
            const auto expanded = blend(kReflect * kExpand);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = expanded;
                f[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                f[worst] = f_reflected;
            }
        } else if (f_reflected < f[second_worst]) {
            simplex[worst] = reflected;
            f[worst] = f_reflected;
        } else {
            bool shrink = false;
            if (f_reflected < f[worst]) {
                const auto outside = blend(kReflect * kContract);
                const double f_outside = objective(outside);
                if (f_outside <= f_reflected) {
                    simplex[worst] = outside;
                    f[worst] = f_outside;
                } else {
                    shrink = true;
                }
            } else {
                const auto inside = blend(-kContract);
                const double f_inside = objective(inside);
                if (f_inside < f[worst]) {
                    simplex[worst] = inside;
                    f[worst] = f_inside;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (std::size_t i = 0; i < simplex.size(); ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < dim; ++d) {
                        simplex[i][d] =
                            simplex[best][d] + kShrink * (simplex[i][d] - simplex[best][d]);
                    }
                    f[i] = objective(simplex[i]);
                }
            }
        }
        record_best(simplex[worst], f[worst]);
    }

    // Confirm the reported loss is resolution-stable at doubled resolution.
    FitProblem refined = problem;
    refined.n *= 2;
    refined.K *= 2;
    result.refined_loss = loss(result.best, refined, measured).value;
    result.refined_ratio = std::abs(result.refined_loss - result.loss_value) /
                           std::max(result.loss_value, 1e-300);
    return result;
}

}  // namespace tempfrac
