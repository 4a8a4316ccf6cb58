#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "stpolar/errors.hpp"
#include "stpolar/rng.hpp"

namespace stpolar {

using CMatrix = Eigen::MatrixXcd;

// Quasi-static channel draw: held constant for one codeword.
struct ChannelRealization {
    CMatrix h; // L x S, entries i.i.d. CN(0,1)
};

struct EigenDecomposition {
    CMatrix u_left;              // L x L unitary
    std::vector<double> lambdas; // top-S eigenvalues of H H^H, descending
    CMatrix v_right;             // S x S unitary
};

enum class CsiMode { kPerfect, kEstimated };

struct CsiState {
    CsiMode mode = CsiMode::kPerfect;
    CMatrix h_hat;     // present iff estimated
    int pilot_len = 0; // L_p
    double pilot_esn0 = 0.0;
};

inline ChannelRealization sample_channel(Rng& rng, int l_rx, int s_streams) {
    if (s_streams < 1 || l_rx < s_streams)
        throw ConfigError("sample_channel: need L >= S >= 1");
    ChannelRealization ch;
    ch.h.resize(l_rx, s_streams);
    for (int r = 0; r < l_rx; ++r)
        for (int c = 0; c < s_streams; ++c)
            ch.h(r, c) = rng.cgaussian(1.0);
    return ch;
}

// Full SVD H = U Sigma V^H; lambdas are squared singular values.
inline EigenDecomposition decompose(const ChannelRealization& ch) {
    if (!ch.h.allFinite())
        throw NumericalError("decompose: channel matrix has non-finite entries");
    Eigen::JacobiSVD<CMatrix> svd(ch.h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("decompose: SVD failed");
    EigenDecomposition d;
    d.u_left = svd.matrixU();
    d.v_right = svd.matrixV();
    const auto& sv = svd.singularValues();
    d.lambdas.resize(static_cast<std::size_t>(ch.h.cols()));
    for (int k = 0; k < ch.h.cols(); ++k)
        d.lambdas[static_cast<std::size_t>(k)] = sv(k) * sv(k);
    return d;
}

// Parallel eigenmode channel: y_k = sqrt(lambda_k) x_k + n_k with n_k i.i.d.
// CN(0, n0). Statistically identical to the explicit precode/combine path
// because U and V are unitary; n0 = 0 gives the noiseless limit.
inline CMatrix parallel_transmit(const CMatrix& symbols, const EigenDecomposition& d, Rng& rng,
                                 double n0) {
    if (symbols.rows() != static_cast<Eigen::Index>(d.lambdas.size()))
        throw DimensionError("parallel_transmit: stream count mismatch");
    if (n0 < 0.0)
        throw DomainError("parallel_transmit: n0 must be >= 0");
    CMatrix y(symbols.rows(), symbols.cols());
    for (int k = 0; k < symbols.rows(); ++k) {
        const double g = std::sqrt(d.lambdas[static_cast<std::size_t>(k)]);
        for (int t = 0; t < symbols.cols(); ++t)
            y(k, t) = g * symbols(k, t) + (n0 > 0.0 ? rng.cgaussian(n0) : std::complex<double>{});
    }
    return y;
}

// Reference path: X = V X~, Y = H X + Z, Y~ = U^H Y, returning the top S
// rows. Used to validate parallel_transmit in distribution.
inline CMatrix transmit_full(const CMatrix& symbols, const ChannelRealization& ch,
                             const EigenDecomposition& d, Rng& rng, double n0) {
    if (symbols.rows() != ch.h.cols())
        throw DimensionError("transmit_full: stream count mismatch");
    CMatrix x = d.v_right * symbols;
    CMatrix y = ch.h * x;
    if (n0 > 0.0) {
        for (int r = 0; r < y.rows(); ++r)
            for (int t = 0; t < y.cols(); ++t)
                y(r, t) += rng.cgaussian(n0);
    }
    CMatrix combined = d.u_left.adjoint() * y;
    return combined.topRows(symbols.rows());
}

// Orthogonal pilot block: DFT rows scaled to unit column norm, so each pilot
// use carries the same total transmit power as a data column.
inline CMatrix pilot_matrix(int s_streams, int pilot_len) {
    if (pilot_len < s_streams)
        throw ConfigError("pilot_matrix: need L_p >= S");
    CMatrix x(s_streams, pilot_len);
    const double scale = 1.0 / std::sqrt(static_cast<double>(s_streams));
    for (int k = 0; k < s_streams; ++k) {
        for (int l = 0; l < pilot_len; ++l) {
            const double ph = -2.0 * M_PI * k * l / pilot_len;
            x(k, l) = scale * std::complex<double>(std::cos(ph), std::sin(ph));
        }
    }
    return x;
}

// LMMSE estimate under the unit-variance i.i.d. prior on H:
// H_hat = Y_p X_p^H (X_p X_p^H + n0 I)^{-1}.
inline CMatrix lmmse_estimate(const CMatrix& y_pilot, const CMatrix& x_pilot, double n0) {
    if (y_pilot.cols() != x_pilot.cols())
        throw DimensionError("lmmse_estimate: pilot length mismatch");
    if (!(n0 > 0.0))
        throw DomainError("lmmse_estimate: n0 must be > 0");
    const int s = static_cast<int>(x_pilot.rows());
    CMatrix gram = x_pilot * x_pilot.adjoint();
    gram += n0 * CMatrix::Identity(s, s);
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success)
        throw NumericalError("lmmse_estimate: Gram factorization failed");
    // solve (G^H) Z = X_p Y_p^H, then H_hat = Z^H
    CMatrix z = llt.solve(x_pilot * y_pilot.adjoint());
    return z.adjoint();
}

// Least-squares estimate (no prior); reference for the LMMSE dominance check.
inline CMatrix ls_estimate(const CMatrix& y_pilot, const CMatrix& x_pilot) {
    if (y_pilot.cols() != x_pilot.cols())
        throw DimensionError("ls_estimate: pilot length mismatch");
    const int s = static_cast<int>(x_pilot.rows());
    CMatrix gram = x_pilot * x_pilot.adjoint();
    Eigen::PartialPivLU<CMatrix> lu(gram);
    CMatrix z = lu.solve(x_pilot * y_pilot.adjoint());
    return z.adjoint();
}

} // namespace stpolar
