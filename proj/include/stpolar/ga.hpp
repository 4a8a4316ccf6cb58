#pragma once

#include <cmath>
#include <vector>

#include "stpolar/errors.hpp"
#include "stpolar/polar.hpp"

namespace stpolar {

namespace detail::gafit {
// phi(m) = 1 - E[tanh(L/2)], L ~ N(m, 2m). Two segments: a continuity-
// constrained cubic below the break (coefficients fit by tools/rca_fit
// against the quadrature oracle, phi(0) = 1 exact) and the standard
// exponential fit above. Max abs error vs the oracle ~1e-3 on [0, 40].
inline constexpr double kPhiBreak = 0.8667;
inline constexpr double kCubicA1 = -0.493487870714;
inline constexpr double kCubicA2 = 0.198000417167;
inline constexpr double kCubicA3 = -0.0555003461278;
inline constexpr double kExpA = -0.4527;
inline constexpr double kExpB = 0.86;
inline constexpr double kExpC = 0.0218;
inline constexpr double kPhiAtBreak = 0.684892977421; // exp segment at kPhiBreak
// Floor keeps phi strictly positive for extreme means. It bounds check
// outputs near phi_inv(floor) ~ 4.6e3, far beyond any selection boundary, so
// frozen-set ordering is unaffected.
inline constexpr double kPhiFloor = 1e-280;
} // namespace detail::gafit

inline double ga_phi(double m) {
    using namespace detail::gafit;
    if (m <= 0.0)
        return 1.0;
    if (m < kPhiBreak)
        return 1.0 + m * (kCubicA1 + m * (kCubicA2 + m * kCubicA3));
    return std::max(std::exp(kExpA * std::pow(m, kExpB) + kExpC), kPhiFloor);
}

inline double ga_phi_inv(double y) {
    using namespace detail::gafit;
    if (!(y > 0.0) || y > 1.0)
        throw DomainError("ga_phi_inv: y must be in (0, 1]");
    if (y >= 1.0)
        return 0.0;
    if (y <= kPhiAtBreak)
        return std::pow((kExpC - std::log(y)) / (-kExpA), 1.0 / kExpB);
    double lo = 0.0, hi = kPhiBreak;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ga_phi(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// check-node mean update: phi^{-1}(1 - (1-phi(m0))(1-phi(m1))), expanded to
// phi0 + phi1 - phi0*phi1 so small phi values survive the subtraction.
inline double ga_check_mean(double m0, double m1) {
    const double p0 = ga_phi(m0);
    const double p1 = ga_phi(m1);
    return ga_phi_inv(std::min(1.0, p0 + p1 - p0 * p1));
}

inline double ga_var_mean(double m0, double m1) { return m0 + m1; }

// Mean-LLR density evolution over the same polarization tree layout as
// rca_evolve. Input/output are mean LLRs of the symmetric Gaussian model.
inline std::vector<double> ga_evolve(std::vector<double> means) {
    const int n = static_cast<int>(means.size());
    if (!is_pow2(n))
        throw DimensionError("ga_evolve: length must be a power of two");
    for (double m : means)
        if (!(m > 0.0))
            throw DomainError("ga_evolve: means must be > 0");
    for (int step = n; step >= 2; step >>= 1) {
        const int half = step >> 1;
        for (int base = 0; base < n; base += step) {
            for (int i = 0; i < half; ++i) {
                const double a = means[base + i];
                const double b = means[base + half + i];
                means[base + i] = ga_check_mean(a, b);
                means[base + half + i] = ga_var_mean(a, b);
            }
        }
    }
    return means;
}

} // namespace stpolar
