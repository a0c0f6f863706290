#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tempfrac/mesh.hpp"

namespace tempfrac {

/// Order and tempering rate of the tempered Caputo operator.
/// lambda = 0 reduces every tempered quantity to the plain Caputo case.
struct TemperedParams {
    double alpha = 0.5;
    double lambda = 0.0;

    void validate() const;
};

/// Gamma function for z > 0 (Lanczos approximation, relative error well
/// below 1e-12 on the (1, 2] range the scheme needs).
double gamma_eval(double z);

/// Discrete Caputo derivative of order table.alpha() at t_k:
/// the weighted history sum over the sampled differences, accumulated in
/// ascending j with compensated summation.
double l1_caputo(std::span<const double> samples, const L1CoefficientTable& table,
                 std::size_t k);

enum class TemperDirection { forward, inverse };

/// Multiply sample l by e^{+lambda t_l} (forward) or e^{-lambda t_l} (inverse).
/// values holds one entry per mesh point (n + 1 of them).
std::vector<double> temper(std::span<const double> values, double lambda,
                           const GradedMesh& mesh, TemperDirection direction);

}  // namespace tempfrac
