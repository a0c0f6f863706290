#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "support/dense_reference.hpp"
#include "tempfrac/errors.hpp"
#include "tempfrac/solver.hpp"
#include "tempfrac/verification.hpp"

using namespace tempfrac;

namespace {

ProblemSpec manufactured_problem(double alpha, double lambda) {
    ProblemSpec spec;
    spec.params = {alpha, lambda};
    spec.f = [alpha, lambda](double x, double t) {
        return manufactured_forcing(alpha, lambda, 1.0, 1.0, x, t);
    };
    return spec;
}

double max_abs_diff(const SolutionField& field,
                    const std::vector<std::vector<double>>& reference) {
    double worst = 0.0;
    for (std::size_t l = 0; l < reference.size(); ++l) {
        for (std::size_t i = 0; i < reference[l].size(); ++i) {
            worst = std::max(worst, std::abs(field.tempered(l, i) - reference[l][i]));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("stability check") {
    ProblemSpec spec;
    spec.v = 1.0;
    spec.D = 1.0;

    auto report = check_stability(spec, 0.01);
    CHECK(report.ok);
    CHECK(report.hmax == doctest::Approx(2.0));

    report = check_stability(spec, 2.0);  // equality is rejected
    CHECK(!report.ok);
    CHECK(report.hmax == doctest::Approx(2.0));

    spec.v = 0.38;
    spec.D = 2.7e-3;
    report = check_stability(spec, 0.01);
    CHECK(report.ok);
    CHECK(report.hmax == doctest::Approx(0.014210526315789474).epsilon(1e-12));
}

TEST_CASE("thomas solve") {
    SUBCASE("single unknown") {
        StepSystem system;
        system.diag = 3.0;
        system.rhs = {6.0};
        const auto z = thomas_solve(system);
        CHECK(z.size() == 1);
        CHECK(z[0] == doctest::Approx(2.0));
    }

    SUBCASE("hand-eliminated 3x3") {
        StepSystem system;
        system.sub = -1.0;
        system.diag = 2.0;
        system.sup = -1.0;
        system.rhs = {1.0, 1.0, 1.0};
        const auto z = thomas_solve(system);
        CHECK(z[0] == doctest::Approx(1.5).epsilon(1e-14));
        CHECK(z[1] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(z[2] == doctest::Approx(1.5).epsilon(1e-14));
    }

    SUBCASE("random dominant system against dense elimination") {
        std::mt19937 rng(42);
        std::uniform_real_distribution<double> uniform(0.1, 1.0);
        const std::size_t m = 63;
        StepSystem system;
        system.sub = -uniform(rng);
        system.sup = -uniform(rng);
        system.diag = std::abs(system.sub) + std::abs(system.sup) + uniform(rng);
        system.rhs.resize(m);
        double rhs_norm = 0.0;
        for (auto& value : system.rhs) {
            value = uniform(rng) - 0.5;
            rhs_norm = std::max(rhs_norm, std::abs(value));
        }

        const auto z = thomas_solve(system);

        std::vector<std::vector<double>> dense(m, std::vector<double>(m, 0.0));
        for (std::size_t i = 0; i < m; ++i) {
            dense[i][i] = system.diag;
            if (i > 0) dense[i][i - 1] = system.sub;
            if (i + 1 < m) dense[i][i + 1] = system.sup;
        }
        const auto reference = testing::dense_solve(dense, system.rhs);
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(std::abs(z[i] - reference[i]) < 1e-10);
        }

        // residual bound
        for (std::size_t i = 0; i < m; ++i) {
            double r = system.diag * z[i] - system.rhs[i];
            if (i > 0) r += system.sub * z[i - 1];
            if (i + 1 < m) r += system.sup * z[i + 1];
            CHECK(std::abs(r) <= 1e-12 * rhs_norm);
        }
    }

    SUBCASE("pivot breakdown") {
        StepSystem system;
        system.diag = 0.0;
        system.rhs = {1.0};
        CHECK_THROWS_AS(thomas_solve(system), NumericalBreakdownError);
    }
}

TEST_CASE("first-step right-hand side has no interior history") {
    ProblemSpec spec;
    spec.params = {0.5, 0.0};
    spec.g = [](double x) { return x * (1.0 - x); };

    const GradedMesh mesh(5, 3.0, 1.0);
    const L1CoefficientTable table(0.5, mesh);
    SolutionField field{SpatialMesh(4, 1.0), mesh};
    auto initial = field.mutable_tempered_slice(0);
    for (std::size_t i = 1; i < 4; ++i) {
        initial[i] = spec.g(field.space().point(i));
    }

    const auto rhs = assemble_rhs(field, table, spec, 1);
    const double w = table.tau_pow(0) / table.gamma_two_minus_alpha();
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK(rhs[i - 1] ==
              doctest::Approx(w * spec.g(field.space().point(i))).epsilon(1e-14));
    }
}

TEST_CASE("second-step right-hand side matches the dense construction") {
    // n=5, r=3, alpha=0.5, K=4, g = x(1-x), f = 0: march one step, then
    // compare assemble_rhs at l=2 against the interpolant-route weights.
    ProblemSpec spec;
    spec.params = {0.5, 0.0};
    spec.g = [](double x) { return x * (1.0 - x); };

    const std::size_t n = 5, K = 4;
    const GradedMesh mesh(n, 3.0, spec.T);
    const L1CoefficientTable table(0.5, mesh);
    const auto field = march(spec, mesh, table, K);

    const auto rhs = assemble_rhs(field, table, spec, 2);

    const double g2ma = std::tgamma(1.5);
    const auto weight = [&](std::size_t j, std::size_t l) {
        const double left = std::pow(mesh.point(l) - mesh.point(j), 0.5);
        const double right = std::pow(mesh.point(l) - mesh.point(j + 1), 0.5);
        return (left - right) / (mesh.length(j) * g2ma);
    };
    for (std::size_t i = 1; i < K; ++i) {
        const double expected = weight(1, 2) * field.tempered(1, i) -
                                weight(0, 2) * (field.tempered(1, i) - field.tempered(0, i));
        CHECK(rhs[i - 1] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("zero data marches to the zero field") {
    ProblemSpec spec;
    spec.params = {0.5, 1.0};
    const auto field = march(spec, 6, 2.0, 8);
    for (std::size_t l = 0; l <= 6; ++l) {
        for (std::size_t i = 0; i <= 8; ++i) {
            CHECK(field.tempered(l, i) == 0.0);
            CHECK(field.untempered(l, i) == 0.0);
        }
    }
}

TEST_CASE("lambda = 0 leaves the field untempered bit for bit") {
    ProblemSpec spec;
    spec.params = {0.6, 0.0};
    spec.g = [](double x) { return std::sin(M_PI * x); };
    const auto field = march(spec, 12, 2.0, 16);
    for (std::size_t l = 0; l <= 12; ++l) {
        for (std::size_t i = 0; i <= 16; ++i) {
            CHECK(field.untempered(l, i) == field.tempered(l, i));
        }
    }
}

TEST_CASE("boundary and initial rows are exact") {
    ProblemSpec spec = manufactured_problem(0.5, 1.0);
    spec.g = [](double x) { return x * (1.0 - x); };
    const auto field = march(spec, 10, 3.0, 12);
    for (std::size_t l = 1; l <= 10; ++l) {
        CHECK(field.tempered(l, 0) == 0.0);
        CHECK(field.tempered(l, 12) == 0.0);
    }
    for (std::size_t i = 1; i < 12; ++i) {
        CHECK(field.tempered(0, i) == spec.g(field.space().point(i)));
    }
}

TEST_CASE("march refuses an unstable step and reports the bound") {
    ProblemSpec spec;
    spec.params = {0.5, 0.0};
    spec.v = 1.0;
    spec.D = 1e-4;
    try {
        march(spec, 4, 1.0, 10);  // h = 0.1 >= 2e-4
        FAIL("expected StabilityError");
    } catch (const StabilityError& e) {
        CHECK(e.hmax() == doctest::Approx(2e-4));
    }
}

TEST_CASE("boundary warning fires for a packet hugging the boundary") {
    ProblemSpec spec;
    spec.params = {0.5, 0.0};
    spec.v = 0.1;
    spec.D = 0.5;
    spec.g = [](double x) { return std::exp(-0.5 * std::pow((x - 0.02) / 0.01, 2)); };
    const auto field = march(spec, 4, 1.0, 20);
    CHECK(field.boundary_warning());

    ProblemSpec centered_packet = spec;
    centered_packet.g = [](double x) {
        return std::exp(-0.5 * std::pow((x - 0.5) / 0.05, 2));
    };
    const auto quiet = march(centered_packet, 4, 1.0, 20);
    CHECK(!quiet.boundary_warning());
}

TEST_CASE("production march agrees with the dense reference") {
    std::mt19937 rng(2025);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int instance = 0; instance < 3; ++instance) {
        const std::size_t n = 4 + static_cast<std::size_t>(uniform(rng) * 6);  // 4..10
        const std::size_t K = 8 + static_cast<std::size_t>(uniform(rng) * 8);  // 8..16
        ProblemSpec spec;
        spec.params = {0.15 + 0.7 * uniform(rng), 2.0 * uniform(rng)};
        spec.v = 0.2 + 1.8 * uniform(rng);
        const double h = 1.0 / static_cast<double>(K);
        spec.D = spec.v * h * (1.0 + uniform(rng));  // hmax = 2h(1+u) > h
        const double a1 = uniform(rng), a2 = uniform(rng);
        spec.g = [a1, a2](double x) {
            return a1 * std::sin(M_PI * x) + a2 * std::sin(2.0 * M_PI * x);
        };
        spec.f = [a1](double x, double t) { return a1 * x * (1.0 - x) * (1.0 + t); };

        const auto field = march(spec, n, 2.0, K);
        const auto reference = testing::dense_march_tempered(spec, n, 2.0, K);
        CHECK(max_abs_diff(field, reference) < 1e-10);
    }
}

TEST_CASE("perturbations of the initial data never amplify") {
    ProblemSpec base;
    base.params = {0.5, 1.0};
    base.g = [](double x) { return std::sin(M_PI * x); };
    const std::size_t n = 20, K = 32;
    const auto unperturbed = march(base, n, 3.0, K);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> uniform(-1e-3, 1e-3);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> eps(K + 1, 0.0);
        double eps_norm = 0.0;
        for (std::size_t i = 1; i < K; ++i) {
            eps[i] = uniform(rng);
            eps_norm = std::max(eps_norm, std::abs(eps[i]));
        }
        ProblemSpec perturbed = base;
        const double h = 1.0 / static_cast<double>(K);
        perturbed.g = [&base, &eps, h](double x) {
            const auto i = static_cast<std::size_t>(std::llround(x / h));
            return base.g(x) + eps[i];
        };
        const auto shifted = march(perturbed, n, 3.0, K);
        for (std::size_t l = 1; l <= n; ++l) {
            double diff = 0.0;
            for (std::size_t i = 0; i <= K; ++i) {
                diff = std::max(diff,
                                std::abs(shifted.tempered(l, i) - unperturbed.tempered(l, i)));
            }
            CHECK(diff <= eps_norm + 1e-12);
        }
    }
}

TEST_CASE("manufactured run reproduces the published n=160 error") {
    // The manufactured solution is quadratic in x, so the spatial error
    // vanishes and K = 100 already reproduces the published time error.
    ProblemSpec spec = manufactured_problem(0.5, 1.0);
    const auto field = march(spec, 160, 3.0, 100);
    double worst = 0.0;
    for (std::size_t l = 0; l <= 160; ++l) {
        for (std::size_t i = 0; i <= 100; ++i) {
            const double exact = manufactured_solution(0.5, 1.0, field.space().point(i),
                                                       field.time().point(l));
            worst = std::max(worst, std::abs(exact - field.untempered(l, i)));
        }
    }
    CHECK(worst == doctest::Approx(5.40e-5).epsilon(0.10));
}
