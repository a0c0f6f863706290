#include "tempfrac/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tempfrac/fractional.hpp"

namespace tempfrac {

GradedMesh::GradedMesh(std::size_t n, double r, double T) : n_(n), r_(r), T_(T) {
    if (n == 0) {
        throw std::invalid_argument("GradedMesh: n must be positive");
    }
    if (!(r >= 1.0)) {
        throw std::invalid_argument("GradedMesh: grading exponent r must satisfy r >= 1");
    }
    if (!(T > 0.0)) {
        throw std::invalid_argument("GradedMesh: horizon T must be positive");
    }

    points_.resize(n + 1);
    lengths_.resize(n);
    const double dn = static_cast<double>(n);
    const double nr = std::pow(dn, r);
    for (std::size_t i = 0; i <= n; ++i) {
        points_[i] = std::pow(static_cast<double>(i) / dn, r) * T;
    }
    points_[n] = T;  // (n/n)^r == 1; keep the endpoint exact
    for (std::size_t i = 0; i < n; ++i) {
        const double di = static_cast<double>(i);
        lengths_[i] =
            (std::pow(di + 1.0, r) - std::pow(di, r)) / nr * T;
    }
}

GradedMesh build_graded_mesh(std::size_t n, double r, double T) {
    return GradedMesh(n, r, T);
}

SpatialMesh::SpatialMesh(std::size_t K, double L) : K_(K), L_(L) {
    if (K == 0) {
        throw std::invalid_argument("SpatialMesh: K must be positive");
    }
    if (!(L > 0.0)) {
        throw std::invalid_argument("SpatialMesh: domain length L must be positive");
    }
    h_ = L / static_cast<double>(K);
    points_.resize(K + 1);
    for (std::size_t i = 0; i <= K; ++i) {
        points_[i] = static_cast<double>(i) * h_;
    }
    points_[K] = L;
}

L1CoefficientTable::L1CoefficientTable(double alpha, const GradedMesh& mesh,
                                       std::size_t precompute_cap)
    : alpha_(alpha), gamma2ma_(0.0), mesh_(mesh) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("L1CoefficientTable: alpha must lie in (0,1)");
    }
    gamma2ma_ = gamma_eval(2.0 - alpha);

    const std::size_t n = mesh_.intervals();
    const double r = mesh_.grading();
    pow_r_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        pow_r_[i] = std::pow(static_cast<double>(i), r);
    }
    tau_pow_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        tau_pow_[j] = std::pow(mesh_.length(j), -alpha);
    }

    if (n <= precompute_cap) {
        rows_.resize(n * (n + 1) / 2);
        for (std::size_t k = 1; k <= n; ++k) {
            double* row = rows_.data() + k * (k - 1) / 2;
            for (std::size_t j = 0; j < k; ++j) {
                row[j] = compute(j, k);
            }
        }
    }
}

double L1CoefficientTable::compute(std::size_t j, std::size_t k) const {
    // Ratio form of the weight, evaluated as
    //   R^(1-a) * (1 - (1 - 1/R)^(1-a))  with  R = (k^r - j^r) / ((j+1)^r - j^r),
    // which avoids the cancellation of the direct difference when R is large.
    // R = 1 (j = k-1) yields exactly 1.
    const double d = pow_r_[j + 1] - pow_r_[j];
    const double ratio = (pow_r_[k] - pow_r_[j]) / d;
    const double p = 1.0 - alpha_;
    return std::pow(ratio, p) * (-std::expm1(p * std::log1p(-1.0 / ratio)));
}

double L1CoefficientTable::a(std::size_t j, std::size_t k) const {
    if (k == 0 || k > mesh_.intervals() || j >= k) {
        throw std::out_of_range("L1CoefficientTable::a: need 0 <= j < k <= n");
    }
    if (!rows_.empty()) {
        return rows_[k * (k - 1) / 2 + j];
    }
    return compute(j, k);
}

void L1CoefficientTable::copy_row(std::size_t k, std::vector<double>& out) const {
    if (k == 0 || k > mesh_.intervals()) {
        throw std::out_of_range("L1CoefficientTable::copy_row: need 1 <= k <= n");
    }
    out.resize(k);
    if (!rows_.empty()) {
        const double* row = rows_.data() + k * (k - 1) / 2;
        out.assign(row, row + k);
        return;
    }
    for (std::size_t j = 0; j < k; ++j) {
        out[j] = compute(j, k);
    }
}

L1CoefficientTable build_l1_table(double alpha, const GradedMesh& mesh) {
    return L1CoefficientTable(alpha, mesh);
}

}  // namespace tempfrac
