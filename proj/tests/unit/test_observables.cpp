#include <cmath>
#include <vector>

#include "doctest.h"
#include "support/synthetic.hpp"
#include "tempfrac/errors.hpp"
#include "tempfrac/observables.hpp"

using namespace tempfrac;

namespace {

/// Field with u(x, t) = e^{-lambda t} t^alpha x(1-x) written directly.
SolutionField analytic_field(std::size_t n, double r, std::size_t K, double alpha,
                             double lambda, double T = 1.0) {
    SolutionField field{SpatialMesh(K, 1.0), GradedMesh(n, r, T)};
    for (std::size_t l = 0; l <= n; ++l) {
        const double t = field.time().point(l);
        auto u = field.mutable_untempered_slice(l);
        for (std::size_t i = 0; i <= K; ++i) {
            const double x = field.space().point(i);
            u[i] = std::exp(-lambda * t) * std::pow(t, alpha) * x * (1.0 - x);
        }
    }
    return field;
}

}  // namespace

TEST_CASE("charge moment") {
    SUBCASE("zero field") {
        SolutionField field{SpatialMesh(16, 1.0), GradedMesh(4, 1.0, 1.0)};
        CHECK(charge_moment(field, 2) == 0.0);
    }

    SUBCASE("constant slice is integrated exactly") {
        SolutionField field{SpatialMesh(50, 1.0), GradedMesh(2, 1.0, 1.0)};
        auto u = field.mutable_untempered_slice(1);
        for (std::size_t i = 0; i <= 50; ++i) u[i] = 1.0;
        CHECK(charge_moment(field, 1) == doctest::Approx(0.5).epsilon(1e-14));
    }

    SUBCASE("manufactured profile: Q(1) = e^{-1}/12") {
        const auto field = analytic_field(8, 1.0, 100, 0.5, 1.0);
        CHECK(charge_moment(field, 8) ==
              doctest::Approx(0.030656620097620193).epsilon(1e-3));
    }
}

TEST_CASE("transient current on an analytic field") {
    // lambda = 0: Q(t) = t^0.5 / 12, I/q = -t^{-0.5}/24 (negative: u grows).
    const std::size_t n = 200;
    const auto field = analytic_field(n, 2.0, 200, 0.5, 0.0);
    const auto trace = transient_current(field);

    CHECK(trace.times.size() == n);
    CHECK(trace.charge.size() == n + 1);

    // sample nearest t = 0.25
    std::size_t at = 0;
    for (std::size_t l = 0; l < n; ++l) {
        if (std::abs(trace.times[l] - 0.25) < std::abs(trace.times[at] - 0.25)) at = l;
    }
    CHECK(trace.current[at] < 0.0);
    CHECK(trace.current[at] == doctest::Approx(-1.0 / 12.0).epsilon(0.02));

    SUBCASE("telescoping conservation is exact") {
        double sum = 0.0;
        for (std::size_t l = 1; l <= n; ++l) {
            sum += trace.current[l - 1] * field.time().length(l - 1);
        }
        const double drop = trace.charge.front() - trace.charge.back();
        CHECK(std::abs(sum - drop) <= 1e-12 * std::abs(drop));
    }

    SUBCASE("centered difference is more accurate on the smooth part") {
        const auto centered = transient_current(field, TimeAssignment::node,
                                                CurrentDifference::centered);
        const double exact = -std::pow(0.25, -0.5) / 24.0;
        CHECK(std::abs(centered.current[at] - exact) <
              std::abs(trace.current[at] - exact));
    }

    SUBCASE("log-midpoint stamps") {
        const auto stamped = transient_current(field, TimeAssignment::log_midpoint);
        CHECK(stamped.times[0] == field.time().point(1));  // no log midpoint exists
        CHECK(stamped.times[5] ==
              doctest::Approx(std::sqrt(field.time().point(5) * field.time().point(6)))
                  .epsilon(1e-15));
    }
}

TEST_CASE("current scales linearly with the field") {
    const auto field = analytic_field(32, 2.0, 64, 0.5, 1.0);
    auto scaled = analytic_field(32, 2.0, 64, 0.5, 1.0);
    for (std::size_t l = 0; l <= 32; ++l) {
        auto u = scaled.mutable_untempered_slice(l);
        for (auto& value : u) value *= 3.5;
    }
    const auto base = transient_current(field);
    const auto big = transient_current(scaled);
    for (std::size_t l = 0; l < base.current.size(); ++l) {
        CHECK(big.current[l] == doctest::Approx(3.5 * base.current[l]).epsilon(1e-12));
        CHECK(big.charge[l] == doctest::Approx(3.5 * base.charge[l]).epsilon(1e-12));
    }
}

TEST_CASE("power-law fit on an exact two-regime trace") {
    const auto trace = testing::two_regime_trace(200, 1e-3, 1e3, 1.0, 0.5, 0.5);
    const auto pre = window_from_log_fractions(trace.times, 0.05, 0.40);
    const auto post = window_from_log_fractions(trace.times, 0.60, 0.95);
    const auto fit = fit_power_laws(trace, pre, post);

    CHECK(fit.pre_slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.post_slope == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(fit.transit_time == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.alpha_pre == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fit.alpha_post == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fit.transit_time > trace.times[fit.window_pre.end - 1]);
    CHECK(fit.transit_time < trace.times[fit.window_post.begin]);
}

TEST_CASE("power-law fit under 1% noise") {
    const auto trace = testing::two_regime_trace(400, 1e-3, 1e3, 1.0, 0.5, 0.5, 0.01, 777);
    const auto pre = window_from_log_fractions(trace.times, 0.05, 0.40);
    const auto post = window_from_log_fractions(trace.times, 0.60, 0.95);
    const auto fit = fit_power_laws(trace, pre, post);

    CHECK(std::abs(fit.pre_slope - (-0.5)) < 0.05);
    CHECK(std::abs(fit.post_slope - (-1.5)) < 0.05);
    CHECK(std::abs(fit.transit_time - 1.0) < 0.10);

    // cross-check the pre slope against a directly coded least-squares sum
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double count = static_cast<double>(pre.size());
    for (std::size_t i = pre.begin; i < pre.end; ++i) {
        const double lx = std::log(trace.times[i]);
        const double ly = std::log(trace.current[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    CHECK(fit.pre_slope == doctest::Approx(slope).epsilon(1e-10));
}

TEST_CASE("power-law fit is invariant under current rescaling") {
    const auto trace = testing::two_regime_trace(200, 1e-2, 1e2, 0.7, 0.4, 0.6, 0.02, 5);
    auto scaled = trace;
    for (auto& value : scaled.current) value *= 17.5;

    const auto pre = window_from_log_fractions(trace.times, 0.05, 0.40);
    const auto post = window_from_log_fractions(trace.times, 0.60, 0.95);
    const auto a = fit_power_laws(trace, pre, post);
    const auto b = fit_power_laws(scaled, pre, post);

    CHECK(a.pre_slope == doctest::Approx(b.pre_slope).epsilon(1e-12));
    CHECK(a.post_slope == doctest::Approx(b.post_slope).epsilon(1e-12));
    CHECK(a.transit_time == doctest::Approx(b.transit_time).epsilon(1e-12));
}

TEST_CASE("power-law fit error paths") {
    auto trace = testing::two_regime_trace(60, 1e-2, 1e2, 1.0, 0.5, 0.5);

    SUBCASE("window too small") {
        CHECK_THROWS_AS(fit_power_laws(trace, {0, 2}, {10, 20}), std::invalid_argument);
    }
    SUBCASE("windows must be ordered and disjoint") {
        CHECK_THROWS_AS(fit_power_laws(trace, {10, 20}, {15, 25}), std::invalid_argument);
    }
    SUBCASE("non-positive sample") {
        trace.current[12] = 0.0;
        CHECK_THROWS_AS(fit_power_laws(trace, {10, 20}, {30, 40}), NonPositiveSampleError);
    }
    SUBCASE("degenerate: one pure power law") {
        const auto pure = testing::two_regime_trace(60, 1e-2, 1e2, 1e9, 0.5, 0.5);
        CHECK_THROWS_AS(fit_power_laws(pure, {5, 15}, {25, 35}), DegenerateWindowError);
    }
}

TEST_CASE("window selection by log fractions") {
    const auto mesh = build_graded_mesh(100, 3.0, 1.0);
    std::vector<double> times(mesh.points().begin() + 1, mesh.points().end());

    const auto full = window_from_log_fractions(times, 0.0, 1.0);
    CHECK(full.begin == 0);
    CHECK(full.end == times.size());

    const auto early = window_from_log_fractions(times, 0.05, 0.30);
    CHECK(early.begin > 0);
    CHECK(early.end < times.size() / 2);
    const double lo = std::log(times.front());
    const double span = std::log(times.back()) - lo;
    for (std::size_t i = early.begin; i < early.end; ++i) {
        const double f = (std::log(times[i]) - lo) / span;
        CHECK(f >= 0.05 - 1e-12);
        CHECK(f <= 0.30 + 1e-12);
    }

    CHECK_THROWS_AS(window_from_log_fractions(times, 0.5, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(window_from_log_fractions(times, -0.1, 0.5), std::invalid_argument);
}
