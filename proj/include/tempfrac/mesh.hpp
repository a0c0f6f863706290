#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tempfrac {

/// Temporal mesh t_i = (i/n)^r * T on [0, T]. The grading exponent r >= 1
/// concentrates points near t = 0, where solutions of fractional-in-time
/// problems lose smoothness; r = 1 is the uniform mesh.
class GradedMesh {
public:
    GradedMesh(std::size_t n, double r, double T);

    std::size_t intervals() const { return n_; }
    double grading() const { return r_; }
    double horizon() const { return T_; }

    /// t_i, 0 <= i <= n
    double point(std::size_t i) const { return points_[i]; }
    /// tau_i = t_{i+1} - t_i, 0 <= i < n
    double length(std::size_t i) const { return lengths_[i]; }

    std::span<const double> points() const { return points_; }
    std::span<const double> lengths() const { return lengths_; }

private:
    std::size_t n_;
    double r_;
    double T_;
    std::vector<double> points_;
    std::vector<double> lengths_;
};

GradedMesh build_graded_mesh(std::size_t n, double r, double T);

/// Uniform spatial mesh x_i = i*h on [0, L], h = L/K.
class SpatialMesh {
public:
    SpatialMesh(std::size_t K, double L);

    std::size_t intervals() const { return K_; }
    double domain_length() const { return L_; }
    double step() const { return h_; }
    double point(std::size_t i) const { return points_[i]; }
    std::span<const double> points() const { return points_; }

private:
    std::size_t K_;
    double L_;
    double h_;
    std::vector<double> points_;
};

/// History weights a_{j,k} of the graded-mesh L1 discretization of the
/// Caputo derivative, plus the tau_j^{-alpha} factors that multiply them.
///
/// The full triangular table is precomputed when n stays below the cap
/// (the scheme re-reads row k at every step k); above the cap entries are
/// generated on demand from the closed form. Lookups are O(1) either way.
/// Immutable after construction and safe to share across threads.
class L1CoefficientTable {
public:
    static constexpr std::size_t kDefaultPrecomputeCap = 10'000;

    L1CoefficientTable(double alpha, const GradedMesh& mesh,
                       std::size_t precompute_cap = kDefaultPrecomputeCap);

    double alpha() const { return alpha_; }
    const GradedMesh& mesh() const { return mesh_; }
    /// Gamma(2 - alpha), the normalization shared by every history sum.
    double gamma_two_minus_alpha() const { return gamma2ma_; }

    /// a_{j,k} for 0 <= j < k <= n.
    double a(std::size_t j, std::size_t k) const;

    /// tau_j^{-alpha} for 0 <= j < n.
    double tau_pow(std::size_t j) const { return tau_pow_[j]; }

    /// Fill out with row k: a_{0,k} .. a_{k-1,k}.
    void copy_row(std::size_t k, std::vector<double>& out) const;

    bool is_precomputed() const { return !rows_.empty(); }

private:
    double compute(std::size_t j, std::size_t k) const;

    double alpha_;
    double gamma2ma_;
    GradedMesh mesh_;
    std::vector<double> pow_r_;    // i^r for i = 0..n
    std::vector<double> tau_pow_;  // tau_j^{-alpha}
    std::vector<double> rows_;     // triangular storage, row k at k(k-1)/2; empty above cap
};

L1CoefficientTable build_l1_table(double alpha, const GradedMesh& mesh);

}  // namespace tempfrac
