#pragma once

// Quadrature reference for the tempered Caputo derivative
//   e^{-lambda t} / Gamma(1-alpha) * int_0^t (t-s)^{-alpha} phi(s) ds,
// phi(s) = d/ds [ e^{lambda s} y(s) ] supplied in closed form by the test.
//
// The weak singularity at s = t is split off at s = t - eps and integrated
// with a power-law-weighted linear rule; the remaining core uses composite
// 16-point Gauss-Legendre on panels geometrically refined toward s = 0,
// where phi itself may be singular (integrably). Test oracle only.

#include <cmath>
#include <functional>

namespace tempfrac::testing {

namespace detail {

// 16-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlNode[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGlWeight[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

inline double gl_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 16; ++i) {
        sum += kGlWeight[i] * f(mid + half * kGlNode[i]);
    }
    return sum * half;
}

}  // namespace detail

/// int_0^t (t-s)^{-alpha} phi(s) ds with endpoint handling as above.
inline double weakly_singular_integral(const std::function<double(double)>& phi,
                                       double alpha, double t, double eps_fraction = 1e-3) {
    const double eps = eps_fraction * t;
    const double cut = t - eps;
    const auto integrand = [&](double s) { return std::pow(t - s, -alpha) * phi(s); };

    // Core [0, cut], panels shrinking geometrically toward 0 so an integrable
    // power singularity of phi at the origin is resolved.
    double core = 0.0;
    double hi = cut;
    while (hi > cut * 1e-60) {
        const double lo = hi * 0.5;
        core += detail::gl_panel(integrand, lo, hi);
        hi = lo;
    }

    // Tail [t-eps, t]: phi linearized through its endpoint values, the
    // power-law weight integrated exactly.
    const double phi_t = phi(t);
    const double slope = (phi_t - phi(cut)) / eps;
    const double tail = phi_t * std::pow(eps, 1.0 - alpha) / (1.0 - alpha) -
                        slope * std::pow(eps, 2.0 - alpha) / (2.0 - alpha);
    return core + tail;
}

/// Tempered Caputo derivative at time t of the function whose tempered
/// slope d/ds e^{lambda s} y(s) is tempered_slope.
inline double tempered_caputo_quadrature(const std::function<double(double)>& tempered_slope,
                                         double alpha, double lambda, double t) {
    const double integral = weakly_singular_integral(tempered_slope, alpha, t);
    return std::exp(-lambda * t) * integral / std::tgamma(1.0 - alpha);
}

}  // namespace tempfrac::testing
