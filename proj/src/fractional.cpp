#include "tempfrac/fractional.hpp"

#include <cmath>
#include <stdexcept>

#include "tempfrac/numerics.hpp"

namespace tempfrac {

void TemperedParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0,1)");
    }
    if (!(lambda >= 0.0)) {
        throw std::invalid_argument("lambda must be >= 0");
    }
}

namespace {

// Lanczos coefficients, g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_gamma(double z) {
    if (z < 0.5) {
        // Reflection; only reachable for z in (0, 0.5).
        return M_PI / (std::sin(M_PI * z) * lanczos_gamma(1.0 - z));
    }
    z -= 1.0;
    double x = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        x += kLanczos[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

double gamma_eval(double z) {
    if (!(z > 0.0)) {
        throw std::domain_error("gamma_eval: z must be positive");
    }
    return lanczos_gamma(z);
}

double l1_caputo(std::span<const double> samples, const L1CoefficientTable& table,
                 std::size_t k) {
    if (k == 0 || k > table.mesh().intervals()) {
        throw std::out_of_range("l1_caputo: need 1 <= k <= n");
    }
    if (samples.size() < k + 1) {
        throw std::out_of_range("l1_caputo: samples must cover indices 0..k");
    }
    KahanSum sum;
    for (std::size_t j = 0; j < k; ++j) {
        sum.add(table.tau_pow(j) * table.a(j, k) * (samples[j + 1] - samples[j]));
    }
    return sum.value() / table.gamma_two_minus_alpha();
}

std::vector<double> temper(std::span<const double> values, double lambda,
                           const GradedMesh& mesh, TemperDirection direction) {
    if (values.size() != mesh.intervals() + 1) {
        throw std::invalid_argument("temper: values must hold one entry per mesh point");
    }
    const double sign = direction == TemperDirection::forward ? 1.0 : -1.0;
    std::vector<double> out(values.size());
    for (std::size_t l = 0; l < values.size(); ++l) {
        out[l] = values[l] * std::exp(sign * lambda * mesh.point(l));
    }
    return out;
}

}  // namespace tempfrac
