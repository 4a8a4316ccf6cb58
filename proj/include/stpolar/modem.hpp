#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stpolar/errors.hpp"
#include "stpolar/polar.hpp"

namespace stpolar {

// LLR clamp in nats; far beyond decision-relevant magnitudes but safe for
// the decoder's tanh-domain kernel.
inline constexpr double kLlrMax = 60.0;

// Gray-labeled unit-energy constellation. points[label] is the symbol for
// that label; labels read MSB-first from consecutive coded bits.
struct Constellation {
    std::string name;
    int bits_per_symbol = 1;
    std::vector<std::complex<double>> points;

    static const Constellation& bpsk() {
        static const Constellation c{"bpsk", 1, {{1.0, 0.0}, {-1.0, 0.0}}};
        return c;
    }

    static const Constellation& qpsk() {
        static const Constellation c = [] {
            Constellation q{"qpsk", 2, {}};
            const double s = 1.0 / std::sqrt(2.0);
            q.points.resize(4);
            for (int b0 = 0; b0 < 2; ++b0)
                for (int b1 = 0; b1 < 2; ++b1)
                    q.points[static_cast<std::size_t>((b0 << 1) | b1)] = {s * (1 - 2 * b0), s * (1 - 2 * b1)};
            return q;
        }();
        return c;
    }

    static const Constellation& qam16() {
        static const Constellation c = [] {
            Constellation q{"16qam", 4, {}};
            // per-axis 2-bit Gray: 00->+3, 01->+1, 11->-1, 10->-3
            const double axis[4] = {3.0, 1.0, -1.0, -3.0};
            const int gray[4] = {0, 1, 3, 2}; // label bits -> axis position
            double level[4];
            for (int p = 0; p < 4; ++p)
                level[gray[p]] = axis[p];
            const double s = 1.0 / std::sqrt(10.0);
            q.points.resize(16);
            for (int hi = 0; hi < 4; ++hi)
                for (int lo = 0; lo < 4; ++lo)
                    q.points[static_cast<std::size_t>((hi << 2) | lo)] = {s * level[hi], s * level[lo]};
            return q;
        }();
        return c;
    }

    static const Constellation& from_name(const std::string& name) {
        if (name == "bpsk")
            return bpsk();
        if (name == "qpsk")
            return qpsk();
        if (name == "16qam")
            return qam16();
        throw ConfigError("unknown constellation: " + name);
    }
};

// Maps each stream's row of coded bits onto symbols: consecutive m_b bits in
// temporal order form one label, first bit most significant.
inline Eigen::MatrixXcd map_bits(const BitMatrix& bits, const Constellation& c) {
    const int mb = c.bits_per_symbol;
    if (bits.cols % mb != 0)
        throw ConfigError("map_bits: bits per symbol must divide T");
    const int t_sym = bits.cols / mb;
    Eigen::MatrixXcd sym(bits.rows, t_sym);
    for (int s = 0; s < bits.rows; ++s) {
        for (int t = 0; t < t_sym; ++t) {
            int label = 0;
            for (int j = 0; j < mb; ++j)
                label = (label << 1) | bits.at(s, t * mb + j);
            sym(s, t) = c.points[static_cast<std::size_t>(label)];
        }
    }
    return sym;
}

// Exact log-MAP per-bit LLRs for one received symbol under gain g =
// sqrt(lambda * es): L_j = lse_{b_j=0}(-|y-gx|^2/n0) - lse_{b_j=1}(...).
// Positive LLR favors bit 0. max_log switches to the max-log metric.
inline void llr_demap(std::complex<double> y, double gain, double es, double n0,
                      const Constellation& c, double* out, bool max_log = false) {
    if (gain < 0.0 || es < 0.0 || !(n0 > 0.0))
        throw DomainError("llr_demap: need gain >= 0, es >= 0, n0 > 0");
    const double g = gain * std::sqrt(es);
    const int mb = c.bits_per_symbol;
    const int npts = static_cast<int>(c.points.size());
    double metric[16];
    for (int k = 0; k < npts; ++k) {
        const std::complex<double> d = y - g * c.points[static_cast<std::size_t>(k)];
        metric[k] = -std::norm(d) / n0;
    }
    for (int j = 0; j < mb; ++j) {
        const int bit = 1 << (mb - 1 - j);
        double m0 = -std::numeric_limits<double>::infinity();
        double m1 = m0;
        for (int k = 0; k < npts; ++k)
            (k & bit ? m1 : m0) = std::max(k & bit ? m1 : m0, metric[k]);
        double llr;
        if (max_log) {
            llr = m0 - m1;
        } else {
            double s0 = 0.0, s1 = 0.0;
            for (int k = 0; k < npts; ++k) {
                if (k & bit)
                    s1 += std::exp(metric[k] - m1);
                else
                    s0 += std::exp(metric[k] - m0);
            }
            llr = (m0 + std::log(s0)) - (m1 + std::log(s1));
        }
        out[j] = std::min(kLlrMax, std::max(-kLlrMax, llr));
    }
}

// Nearest-point hard decision; returns the label.
inline int hard_demap(std::complex<double> y, double gain, double es, const Constellation& c) {
    const double g = gain * std::sqrt(es);
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < static_cast<int>(c.points.size()); ++k) {
        const double d = std::norm(y - g * c.points[static_cast<std::size_t>(k)]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

} // namespace stpolar
