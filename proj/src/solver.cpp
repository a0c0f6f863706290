#include "tempfrac/solver.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <stdexcept>

#include "tempfrac/errors.hpp"
#include "tempfrac/numerics.hpp"

namespace tempfrac {

void ProblemSpec::validate() const {
    params.validate();
    if (!(v > 0.0)) throw std::invalid_argument("v must be positive");
    if (!(D > 0.0)) throw std::invalid_argument("D must be positive");
    if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
}

StabilityReport check_stability(const ProblemSpec& spec, double h) {
    StabilityReport report;
    report.hmax = 2.0 * spec.D / spec.v;
    report.ok = h < report.hmax;  // equality is rejected
    return report;
}

std::vector<double> thomas_solve(const StepSystem& system) {
    const std::size_t m = system.rhs.size();
    if (m == 0) {
        return {};
    }
    constexpr double kPivotFloor = 1e-300;

    std::vector<double> z(m);
    std::vector<double> c_prime(m);

    double pivot = system.diag;
    if (std::abs(pivot) < kPivotFloor) {
        throw NumericalBreakdownError("thomas_solve: vanishing pivot at row 0");
    }
    c_prime[0] = system.sup / pivot;
    z[0] = system.rhs[0] / pivot;
    for (std::size_t i = 1; i < m; ++i) {
        pivot = system.diag - system.sub * c_prime[i - 1];
        if (std::abs(pivot) < kPivotFloor) {
            throw NumericalBreakdownError("thomas_solve: vanishing pivot at row " +
                                          std::to_string(i));
        }
        c_prime[i] = system.sup / pivot;
        z[i] = (system.rhs[i] - system.sub * z[i - 1]) / pivot;
    }
    for (std::size_t i = m - 1; i-- > 0;) {
        z[i] -= c_prime[i] * z[i + 1];
    }
    return z;
}

SolutionField::SolutionField(SpatialMesh space, GradedMesh time)
    : space_(std::move(space)),
      time_(std::move(time)),
      y_((space_.intervals() + 1) * (time_.intervals() + 1), 0.0),
      u_((space_.intervals() + 1) * (time_.intervals() + 1), 0.0) {}

std::vector<double> assemble_rhs(const SolutionField& field,
                                 const L1CoefficientTable& table,
                                 const ProblemSpec& spec, std::size_t l) {
    const std::size_t K = field.space().intervals();
    const std::size_t n = field.time().intervals();
    if (l == 0 || l > n) {
        throw std::out_of_range("assemble_rhs: need 1 <= l <= n");
    }
    const double gamma2ma = table.gamma_two_minus_alpha();
    const double t_l = field.time().point(l);
    const double efactor = std::exp(spec.params.lambda * t_l);
    const double w_prev = table.tau_pow(l - 1) / gamma2ma;

    std::vector<double> rhs(K - 1);

    // History over j = 0..l-2, compensated per interior point, ascending j.
    std::vector<double> sum(K - 1, 0.0);
    std::vector<double> comp(K - 1, 0.0);
    std::vector<double> row;
    if (l >= 2) {
        table.copy_row(l, row);
        for (std::size_t j = 0; j + 1 < l; ++j) {
            const double w = table.tau_pow(j) * row[j];
            const auto next = field.tempered_slice(j + 1);
            const auto prev = field.tempered_slice(j);
            for (std::size_t i = 1; i < K; ++i) {
                const double term = w * (next[i] - prev[i]);
                const double y = term - comp[i - 1];
                const double t = sum[i - 1] + y;
                comp[i - 1] = (t - sum[i - 1]) - y;
                sum[i - 1] = t;
            }
        }
    }

    const auto last = field.tempered_slice(l - 1);
    for (std::size_t i = 1; i < K; ++i) {
        rhs[i - 1] = w_prev * last[i] - sum[i - 1] / gamma2ma +
                     efactor * spec.forcing(field.space().point(i), t_l);
    }
    return rhs;
}

namespace {

void warn_incompatible_initial_profile(const ProblemSpec& spec, SolutionField& field) {
    const std::size_t K = field.space().intervals();
    if (K < 2) return;
    const auto slice = field.tempered_slice(0);
    double mean = 0.0;
    for (std::size_t i = 1; i < K; ++i) {
        mean += std::abs(slice[i]);
    }
    mean /= static_cast<double>(K - 1);
    if (mean == 0.0) return;
    const double edge = std::max(std::abs(slice[1]), std::abs(slice[K - 1]));
    if (edge > 10.0 * mean) {
        field.set_boundary_warning(true);
        std::cerr << "tempfrac: warning: initial profile is large next to the "
                     "absorbing boundaries (|g| = "
                  << edge << " vs interior mean " << mean << ")\n";
    }
}

}  // namespace

SolutionField march(const ProblemSpec& spec, const GradedMesh& time_mesh,
                    const L1CoefficientTable& table, std::size_t K) {
    spec.validate();
    if (K < 2) {
        throw std::invalid_argument("march: need K >= 2 spatial intervals");
    }
    SpatialMesh space(K, spec.L);
    const double h = space.step();
    const auto stability = check_stability(spec, h);
    if (!stability.ok) {
        throw StabilityError(stability.hmax, h);
    }

    SolutionField field(std::move(space), time_mesh);
    const std::size_t n = time_mesh.intervals();

    auto initial = field.mutable_tempered_slice(0);
    for (std::size_t i = 1; i < K; ++i) {
        initial[i] = spec.initial(field.space().point(i));
    }
    warn_incompatible_initial_profile(spec, field);

    const double gamma2ma = table.gamma_two_minus_alpha();
    const double d_over_h2 = spec.D / (h * h);
    const double v_over_2h = spec.v / (2.0 * h);

    StepSystem system;
    system.sub = -(d_over_h2 + v_over_2h);
    system.sup = -(d_over_h2 - v_over_2h);
    for (std::size_t l = 1; l <= n; ++l) {
        system.diag = table.tau_pow(l - 1) / gamma2ma + 2.0 * d_over_h2;
        system.rhs = assemble_rhs(field, table, spec, l);
        const auto interior = thomas_solve(system);
        auto slice = field.mutable_tempered_slice(l);
        slice[0] = 0.0;
        slice[K] = 0.0;
        for (std::size_t i = 1; i < K; ++i) {
            slice[i] = interior[i - 1];
        }
    }

    for (std::size_t l = 0; l <= n; ++l) {
        const double factor = std::exp(-spec.params.lambda * time_mesh.point(l));
        const auto y = field.tempered_slice(l);
        auto u = field.mutable_untempered_slice(l);
        for (std::size_t i = 0; i <= K; ++i) {
            u[i] = factor * y[i];
        }
    }
    return field;
}

SolutionField march(const ProblemSpec& spec, std::size_t n, double r, std::size_t K) {
    spec.validate();
    GradedMesh time_mesh(n, r, spec.T);
    L1CoefficientTable table(spec.params.alpha, time_mesh);
    return march(spec, time_mesh, table, K);
}

}  // namespace tempfrac
