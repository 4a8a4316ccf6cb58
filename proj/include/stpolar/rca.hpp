#pragma once

#include <cmath>
#include <vector>

#include "stpolar/errors.hpp"
#include "stpolar/polar.hpp"
#include "stpolar/rca_coeffs.hpp"

namespace stpolar {

// Variable-node update in log-SNR domain: ln(e^a + e^b), exact log-sum-exp.
// Output strictly exceeds max(a, b) for finite inputs.
inline double rca_var(double a, double b) {
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

namespace detail {

inline double clenshaw(const double* c, int degree, double u) {
    // Chebyshev series on u in [-1, 1]
    double b1 = 0.0, b2 = 0.0;
    for (int k = degree; k >= 1; --k) {
        const double b0 = 2.0 * u * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return u * b1 - b2 + c[0];
}

} // namespace detail

// Closed-form approximation of the log-domain reciprocal map
// Lambda(xi) = ln Psi(e^xi). Piecewise: Chebyshev fits in the central range,
// exponential-affine tail on the right (driven by the fitted capacity-gap
// asymptote), and its functional inverse on the left. Strictly decreasing,
// involutive to the fit tolerance; coefficients generated by tools/rca_fit
// against the numeric oracle in capacity.hpp.
inline double lambda_log(double xi) {
    using namespace detail::rcafit;
    if (xi >= kXiRight) {
        const double g = std::exp(xi < 690.0 ? xi : 690.0);
        return kLnLn2 + kTailLnA - kTailAlpha * g - kTailBeta * xi + kTailDelta / g;
    }
    if (xi <= kXiLeft) {
        const double r = kTailLnA + kLnLn2 - xi;
        double g = (r > 2.0 ? r : 2.0) / kTailAlpha;
        for (int it = 0; it < 4; ++it)
            g = (r - kTailBeta * std::log(g) + kTailDelta / g) / kTailAlpha;
        return std::log(g);
    }
    int k = 0;
    while (k + 1 < kNumIntervals && xi >= kKnots[k + 1])
        ++k;
    const double lo = kKnots[k], hi = kKnots[k + 1];
    const double u = (2.0 * xi - lo - hi) / (hi - lo);
    return detail::clenshaw(kCheb[k], kDegree, u);
}

// Check-node update: Lambda(lse(Lambda(xi0), Lambda(xi1))). Commutative;
// output strictly below min(xi0, xi1).
inline double rca_check(double xi0, double xi1) {
    return lambda_log(rca_var(lambda_log(xi0), lambda_log(xi1)));
}

// Reliability evolution over the length-N polarization tree. Stages run from
// the widest stride to adjacent pairs -- the encoder butterfly traversed from
// the channel side -- with the check update on the upper index of each pair
// and the variable update on the lower. Output i is the log reliability of
// synthesized channel i.
inline std::vector<double> rca_evolve(std::vector<double> xi) {
    const int n = static_cast<int>(xi.size());
    if (!is_pow2(n))
        throw DimensionError("rca_evolve: length must be a power of two");
    for (int step = n; step >= 2; step >>= 1) {
        const int half = step >> 1;
        for (int base = 0; base < n; base += step) {
            for (int i = 0; i < half; ++i) {
                const double a = xi[base + i];
                const double b = xi[base + half + i];
                xi[base + i] = rca_check(a, b);
                xi[base + half + i] = rca_var(a, b);
            }
        }
    }
    return xi;
}

} // namespace stpolar
