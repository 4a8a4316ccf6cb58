#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "stpolar/errors.hpp"

namespace stpolar {

// Gauss-Hermite rule for integral f(x) exp(-x^2) dx ~= sum w_i f(x_i)
// (physicists' convention). Nodes/weights from the Golub-Welsch eigenvalue
// method on the Jacobi matrix; built once.
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussHermite(int n) {
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
        for (int k = 1; k < n; ++k) {
            const double b = std::sqrt(k / 2.0);
            jac(k, k - 1) = b;
            jac(k - 1, k) = b;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
        if (es.info() != Eigen::Success)
            throw NumericalError("GaussHermite: eigen decomposition failed");
        const double sqrt_pi = std::sqrt(M_PI);
        nodes.resize(n);
        weights.resize(n);
        for (int i = 0; i < n; ++i) {
            nodes[i] = es.eigenvalues()(i);
            const double v0 = es.eigenvectors()(0, i);
            weights[i] = sqrt_pi * v0 * v0;
        }
    }

    static const GaussHermite& standard() {
        static const GaussHermite rule(96);
        return rule;
    }
};

// Gauss-Legendre rule on [-1, 1], same Golub-Welsch construction.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n) {
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
        for (int k = 1; k < n; ++k) {
            const double b = k / std::sqrt(4.0 * k * k - 1.0);
            jac(k, k - 1) = b;
            jac(k - 1, k) = b;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
        if (es.info() != Eigen::Success)
            throw NumericalError("GaussLegendre: eigen decomposition failed");
        nodes.resize(n);
        weights.resize(n);
        for (int i = 0; i < n; ++i) {
            nodes[i] = es.eigenvalues()(i);
            const double v0 = es.eigenvectors()(0, i);
            weights[i] = 2.0 * v0 * v0;
        }
    }

    static const GaussLegendre& standard() {
        static const GaussLegendre rule(200);
        return rule;
    }
};

namespace detail {

inline constexpr double kInvLn2 = 1.4426950408889634;
inline constexpr double kLnLn2c = -0.36651292058166432; // ln(ln 2)

// log2(1 + e^{-z}), stable for large |z|
inline double log2_1p_exp_neg(double z) {
    if (z < 0.0)
        return (-z + std::log1p(std::exp(z))) * kInvLn2;
    return std::log1p(std::exp(-z)) * kInvLn2;
}

// 1 - log2(1+e^{-z}) = log2(2/(1+e^{-z})); cancellation-free when small and
// safe for very negative z (where tanh-based forms round to -1 exactly).
inline double capacity_integrand(double z) {
    if (z < 0.0)
        return (std::log(2.0) + z - std::log1p(std::exp(z))) * kInvLn2;
    return std::log1p(std::tanh(0.5 * z)) * kInvLn2;
}

// Saturation bounds for the reciprocal map in the linear SNR domain.
inline constexpr double kPsiGammaLo = 1e-300;
inline constexpr double kPsiGammaHi = 1e300;

} // namespace detail

// Binary-input AWGN capacity C(gamma) in bits, gamma the linear SNR.
// Numeric reference: Gauss-Hermite quadrature of E[1 - log2(1+e^{-L})] over
// the channel LLR density L ~ N(4 gamma, 8 gamma). Strictly increasing in
// gamma until the gap to 1 falls below double resolution.
inline double biawgn_capacity(double gamma) {
    if (gamma < 0.0 || !std::isfinite(gamma))
        throw DomainError("biawgn_capacity: gamma must be finite and >= 0");
    if (gamma == 0.0)
        return 0.0;
    const auto& gh = GaussHermite::standard();
    const double mean = 4.0 * gamma;
    const double scale = 4.0 * std::sqrt(gamma); // sqrt(2)*sigma, sigma^2 = 8 gamma
    double acc = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i)
        acc += gh.weights[i] * detail::capacity_integrand(mean + scale * gh.nodes[i]);
    const double c = acc / std::sqrt(M_PI);
    return std::min(1.0, std::max(0.0, c));
}

// ln C(gamma), stable where C is far below 1 (the sum itself is small; no
// 1-x cancellation).
inline double biawgn_capacity_ln(double gamma) {
    if (!(gamma > 0.0))
        throw DomainError("biawgn_capacity_ln: gamma must be > 0");
    // small-SNR limit C ~ gamma/ln2; below this the quadrature sum is
    // cancellation-dominated while the limit is already exact to 1e-8
    if (gamma < 1e-8)
        return std::log(gamma) - detail::kLnLn2c;
    const auto& gh = GaussHermite::standard();
    const double mean = 4.0 * gamma;
    const double scale = 4.0 * std::sqrt(gamma);
    double acc = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i)
        acc += gh.weights[i] * detail::capacity_integrand(mean + scale * gh.nodes[i]);
    return std::log(acc) - 0.5 * std::log(M_PI);
}

// ln(1 - C(gamma)) via log-sum-exp so the capacity gap stays resolvable far
// beyond where 1-C underflows next to 1.
inline double biawgn_capacity_gap_ln(double gamma) {
    if (gamma < 0.0)
        throw DomainError("biawgn_capacity_gap_ln: gamma must be >= 0");
    if (gamma == 0.0)
        return 0.0; // gap = 1
    // ln( log2(1+e^{-z}) ); for large z, log2(1+e^{-z}) ~ e^{-z}/ln2
    const auto ln_f = [](double z) {
        return (z > 35.0) ? (-z - detail::kLnLn2c) : std::log(detail::log2_1p_exp_neg(z));
    };
    std::vector<double> terms;
    if (gamma < 8.0) {
        // saddle of the gap integrand lies within the Hermite node span
        const auto& gh = GaussHermite::standard();
        const double mean = 4.0 * gamma;
        const double scale = 4.0 * std::sqrt(gamma);
        terms.resize(gh.nodes.size());
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const double z = mean + scale * gh.nodes[i];
            terms[i] = std::log(gh.weights[i]) + ln_f(z);
        }
        double hi = -std::numeric_limits<double>::infinity();
        for (double t : terms)
            hi = std::max(hi, t);
        double acc = 0.0;
        for (double t : terms)
            acc += std::exp(t - hi);
        return hi + std::log(acc) - 0.5 * std::log(M_PI);
    }
    // For large gamma the integrand concentrates near z = 0, far outside the
    // Hermite span; integrate in the z domain directly over [-50, 60] where
    // the truncated tails contribute below e^{-25} relative.
    const auto& gl = GaussLegendre::standard();
    const double mean = 4.0 * gamma;
    const double var = 8.0 * gamma;
    const double ln_norm = -0.5 * std::log(2.0 * M_PI * var);
    const double z_lo = -50.0, z_hi = 60.0;
    const double half = 0.5 * (z_hi - z_lo), mid = 0.5 * (z_hi + z_lo);
    terms.resize(gl.nodes.size());
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double z = mid + half * gl.nodes[i];
        const double d = z - mean;
        terms[i] = std::log(gl.weights[i] * half) + ln_norm - d * d / (2.0 * var) + ln_f(z);
        hi = std::max(hi, terms[i]);
    }
    double acc = 0.0;
    for (double t : terms)
        acc += std::exp(t - hi);
    return hi + std::log(acc);
}

// Reciprocal SNR map Psi(gamma): C(Psi(gamma)) = 1 - C(gamma). Bisection on
// the capacity complementarity, carried out in the log-SNR domain with the
// stable ln C / ln(1-C) forms so both branches stay resolvable; capacity
// agreement is far tighter than 1e-9 everywhere the gap is representable.
// Saturates at [1e-300, 1e300] for inputs beyond the representable range.
inline double reciprocal_snr(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw DomainError("reciprocal_snr: gamma must be finite and > 0");
    const bool upper = biawgn_capacity(gamma) >= 0.5; // output below the fixed point
    double lo, hi;
    if (upper) {
        const double target = biawgn_capacity_gap_ln(gamma); // = ln C(psi)
        // C(g) <= g/ln2 gives the lower bracket edge
        lo = target + detail::kLnLn2c;
        hi = 1.0;
        if (lo <= std::log(detail::kPsiGammaLo))
            return detail::kPsiGammaLo;
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (biawgn_capacity_ln(std::exp(mid)) < target)
                lo = mid;
            else
                hi = mid;
        }
    } else {
        const double target = biawgn_capacity_ln(gamma); // = ln(1 - C(psi))
        lo = -1.0;
        hi = std::log(-target + 40.0) + 1.0;
        if (hi >= std::log(detail::kPsiGammaHi))
            return detail::kPsiGammaHi;
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (biawgn_capacity_gap_ln(std::exp(mid)) > target)
                lo = mid;
            else
                hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

} // namespace stpolar
