#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "stpolar/errors.hpp"
#include "stpolar/polar.hpp"

namespace stpolar {

enum class ScKernel { kExact, kMinSum };

namespace detail {

// Exact check combine 2 atanh(tanh(a/2) tanh(b/2)) in its numerically stable
// log-domain form: sgn(a)sgn(b) min(|a|,|b|) + log1p(e^{-|a+b|}) - log1p(e^{-|a-b|}).
inline double sc_f_exact(double a, double b) {
    const double sgn = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    const double m = std::min(std::abs(a), std::abs(b));
    return sgn * m + std::log1p(std::exp(-std::abs(a + b))) -
           std::log1p(std::exp(-std::abs(a - b)));
}

inline double sc_f_minsum(double a, double b) {
    const double sgn = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    return sgn * std::min(std::abs(a), std::abs(b));
}

inline double sc_g(double a, double b, std::uint8_t u) { return b + (u ? -a : a); }

} // namespace detail

// Successive cancellation decoder. One instance holds per-depth scratch
// buffers; use one instance per thread.
class ScDecoder {
public:
    explicit ScDecoder(CodeConfig cfg, ScKernel kernel = ScKernel::kExact)
        : cfg_(std::move(cfg)), kernel_(kernel) {
        const int n = cfg_.n_total;
        int len = n;
        while (len > 1) {
            scratch_.emplace_back(static_cast<std::size_t>(len / 2));
            len /= 2;
        }
        uhat_.resize(static_cast<std::size_t>(n));
        beta_.resize(static_cast<std::size_t>(n));
    }

    // Returns the K decoded information bits.
    BitVector decode(const std::vector<double>& llr) {
        decode_uhat(llr);
        return extract_info(uhat_, cfg_);
    }

    // Full u-domain estimate (frozen positions identically 0); used by the
    // frozen-set mismatch experiments.
    const BitVector& decode_uhat(const std::vector<double>& llr) {
        if (static_cast<int>(llr.size()) != cfg_.n_total)
            throw DimensionError("ScDecoder: LLR length must equal N");
        pos_ = 0;
        recurse(0, llr.data(), beta_.data(), cfg_.n_total);
        return uhat_;
    }

    const CodeConfig& config() const { return cfg_; }

private:
    void recurse(int depth, const double* llr, std::uint8_t* beta, int len) {
        if (len == 1) {
            const int i = pos_++;
            std::uint8_t u = 0;
            if (!cfg_.frozen_mask[static_cast<std::size_t>(i)])
                u = llr[0] < 0.0 ? 1 : 0; // tie at exactly 0 decodes to 0
            uhat_[static_cast<std::size_t>(i)] = u;
            beta[0] = u;
            return;
        }
        const int half = len / 2;
        double* tmp = scratch_[static_cast<std::size_t>(depth)].data();
        if (kernel_ == ScKernel::kExact) {
            for (int j = 0; j < half; ++j)
                tmp[j] = detail::sc_f_exact(llr[j], llr[j + half]);
        } else {
            for (int j = 0; j < half; ++j)
                tmp[j] = detail::sc_f_minsum(llr[j], llr[j + half]);
        }
        recurse(depth + 1, tmp, beta, half);
        for (int j = 0; j < half; ++j)
            tmp[j] = detail::sc_g(llr[j], llr[j + half], beta[j]);
        recurse(depth + 1, tmp, beta + half, half);
        for (int j = 0; j < half; ++j)
            beta[j] ^= beta[j + half];
    }

    CodeConfig cfg_;
    ScKernel kernel_;
    std::vector<std::vector<double>> scratch_;
    BitVector uhat_;
    BitVector beta_;
    int pos_ = 0;
};

inline BitVector sc_decode(const std::vector<double>& llr, const CodeConfig& cfg,
                           ScKernel kernel = ScKernel::kExact) {
    ScDecoder dec(cfg, kernel);
    return dec.decode(llr);
}

// Brute-force maximum-likelihood oracle for tiny codes: scores every valid
// codeword by LLR correlation, lexicographically smallest info word on ties.
inline BitVector ml_decode(const std::vector<double>& llr, const CodeConfig& cfg) {
    if (cfg.n_total > 16)
        throw RangeError("ml_decode: refused for N > 16");
    if (static_cast<int>(llr.size()) != cfg.n_total)
        throw DimensionError("ml_decode: LLR length must equal N");
    const int k = cfg.k_info;
    BitVector best_info;
    double best_score = std::numeric_limits<double>::infinity();
    BitVector info(static_cast<std::size_t>(k));
    for (std::uint32_t m = 0; m < (1u << k); ++m) {
        for (int j = 0; j < k; ++j)
            info[static_cast<std::size_t>(j)] = (m >> (k - 1 - j)) & 1u;
        const BitVector x = encode_1d(assemble_input(info, cfg));
        double score = 0.0; // sum of LLRs at set codeword bits; smaller is likelier
        for (int i = 0; i < cfg.n_total; ++i)
            if (x[static_cast<std::size_t>(i)])
                score += llr[static_cast<std::size_t>(i)];
        if (score < best_score) {
            best_score = score;
            best_info = info;
        }
    }
    return best_info;
}

} // namespace stpolar
