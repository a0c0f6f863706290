#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tempfrac/fractional.hpp"
#include "tempfrac/mesh.hpp"

namespace tempfrac {

/// Continuous model data: tempered operator parameters, advection velocity v,
/// diffusion coefficient D, domain [0, L] x (0, T], initial profile g on
/// (0, L) and forcing f(x, t). Boundary values are zero (absorbing).
struct ProblemSpec {
    TemperedParams params;
    double v = 1.0;
    double D = 1.0;
    double L = 1.0;
    double T = 1.0;
    std::function<double(double)> g;            // initial profile; empty means zero
    std::function<double(double, double)> f;    // forcing; empty means zero

    void validate() const;

    double initial(double x) const { return g ? g(x) : 0.0; }
    double forcing(double x, double t) const { return f ? f(x, t) : 0.0; }
};

struct StabilityReport {
    bool ok = false;
    double hmax = 0.0;  // 2D/v
};

/// The scheme is stable iff h < 2D/v (strict).
StabilityReport check_stability(const ProblemSpec& spec, double h);

/// One implicit step: constant tridiagonal coefficients and the assembled
/// right-hand side over the K-1 interior unknowns.
struct StepSystem {
    double sub = 0.0;   // -(D/h^2 + v/(2h))
    double diag = 0.0;  // tau_{l-1}^{-alpha}/Gamma(2-alpha) + 2D/h^2
    double sup = 0.0;   // -(D/h^2 - v/(2h))
    std::vector<double> rhs;
};

/// Thomas elimination for the strictly diagonally dominant step system.
std::vector<double> thomas_solve(const StepSystem& system);

/// Space-time lattice of the tempered values Y_i^l and the untempered
/// solution U_i^l = e^{-lambda t_l} Y_i^l. Row l is contiguous.
class SolutionField {
public:
    SolutionField(SpatialMesh space, GradedMesh time);

    const SpatialMesh& space() const { return space_; }
    const GradedMesh& time() const { return time_; }

    double tempered(std::size_t l, std::size_t i) const { return y_[idx(l, i)]; }
    double untempered(std::size_t l, std::size_t i) const { return u_[idx(l, i)]; }

    std::span<const double> tempered_slice(std::size_t l) const {
        return {y_.data() + idx(l, 0), space_.intervals() + 1};
    }
    std::span<const double> untempered_slice(std::size_t l) const {
        return {u_.data() + idx(l, 0), space_.intervals() + 1};
    }

    std::span<double> mutable_tempered_slice(std::size_t l) {
        return {y_.data() + idx(l, 0), space_.intervals() + 1};
    }
    std::span<double> mutable_untempered_slice(std::size_t l) {
        return {u_.data() + idx(l, 0), space_.intervals() + 1};
    }

    /// Set when the sampled initial profile is not numerically small next to
    /// the absorbing boundaries.
    bool boundary_warning() const { return boundary_warning_; }
    void set_boundary_warning(bool value) { boundary_warning_ = value; }

private:
    std::size_t idx(std::size_t l, std::size_t i) const {
        return l * (space_.intervals() + 1) + i;
    }

    SpatialMesh space_;
    GradedMesh time_;
    std::vector<double> y_;
    std::vector<double> u_;
    bool boundary_warning_ = false;
};

/// Right-hand side of step l: the previous-level term, the accumulated
/// history sum over steps 0..l-2 (compensated, ascending j) and the
/// tempered forcing, for interior points i = 1..K-1.
std::vector<double> assemble_rhs(const SolutionField& field,
                                 const L1CoefficientTable& table,
                                 const ProblemSpec& spec, std::size_t l);

/// March the implicit scheme over the full lattice. Throws StabilityError
/// (carrying hmax) when h = L/K fails the stability bound.
SolutionField march(const ProblemSpec& spec, std::size_t n, double r, std::size_t K);

/// Variant reusing an existing temporal mesh and coefficient table; the
/// table must have been built for spec.params.alpha and the given mesh.
SolutionField march(const ProblemSpec& spec, const GradedMesh& time_mesh,
                    const L1CoefficientTable& table, std::size_t K);

}  // namespace tempfrac
