#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "stpolar/errors.hpp"

namespace stpolar {

using BitVector = std::vector<std::uint8_t>;

inline bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

inline int log2_exact(int v) {
    int n = 0;
    while ((1 << n) < v) ++n;
    return n;
}

// S x T binary array, row-major. Row index = spatial stream, column = time slot.
struct BitMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> data;

    BitMatrix() = default;
    BitMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

    std::uint8_t& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    std::uint8_t at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

// Code dimensions and frozen set for the spatiotemporal code.
// N = S*T coded bits, K information bits, frozen positions carry 0.
struct CodeConfig {
    int s_streams = 0;
    int t_slots = 0;
    int n_total = 0;
    int k_info = 0;
    std::vector<int> frozen_set;       // ascending
    std::vector<std::uint8_t> frozen_mask; // length N

    CodeConfig() = default;

    CodeConfig(int s, int t, int k, std::vector<int> frozen)
        : s_streams(s), t_slots(t), n_total(s * t), k_info(k), frozen_set(std::move(frozen)) {
        if (!is_pow2(s_streams) || !is_pow2(t_slots))
            throw DimensionError("CodeConfig: S and T must be powers of two");
        if (k_info <= 0 || k_info > n_total)
            throw RangeError("CodeConfig: K must satisfy 0 < K <= N");
        std::sort(frozen_set.begin(), frozen_set.end());
        if (static_cast<int>(frozen_set.size()) != n_total - k_info)
            throw DimensionError("CodeConfig: |frozen_set| must equal N-K");
        frozen_mask.assign(static_cast<std::size_t>(n_total), 0);
        for (std::size_t j = 0; j < frozen_set.size(); ++j) {
            const int idx = frozen_set[j];
            if (idx < 0 || idx >= n_total)
                throw RangeError("CodeConfig: frozen index out of range");
            if (j > 0 && frozen_set[j - 1] == idx)
                throw DimensionError("CodeConfig: duplicate frozen index");
            frozen_mask[static_cast<std::size_t>(idx)] = 1;
        }
    }
};

// Row-major bijection between the (stream, slot) grid and 1-D bit indices.
inline int index_map(int s, int t, int S, int T) {
    if (s < 0 || s >= S || t < 0 || t >= T)
        throw RangeError("index_map: (s,t) out of range");
    return s * T + t;
}

inline std::pair<int, int> index_unmap(int i, int S, int T) {
    if (i < 0 || i >= S * T)
        throw RangeError("index_unmap: index out of range");
    return {i / T, i % T};
}

namespace detail {

// In-place x = u * F^{(x)n} over GF(2) for a length-(1<<n) strided slice.
// Butterfly pairs (i, i+2^{l-1}) per layer; natural order, no bit reversal.
inline void polar_transform_strided(std::uint8_t* v, int len, int stride) {
    for (int step = 2; step <= len; step <<= 1) {
        const int half = step >> 1;
        for (int base = 0; base < len; base += step) {
            for (int i = 0; i < half; ++i) {
                v[(base + i) * stride] ^= v[(base + half + i) * stride];
            }
        }
    }
}

} // namespace detail

// x = u * F_N over GF(2), F_N = F^{(x)n}, F = [[1,0],[1,1]]. O(N log N),
// involutive (F is self-inverse over the binary field).
inline BitVector encode_1d(BitVector u) {
    if (!is_pow2(static_cast<int>(u.size())))
        throw DimensionError("encode_1d: length must be a power of two");
    detail::polar_transform_strided(u.data(), static_cast<int>(u.size()), 1);
    return u;
}

// 2-D transform: the temporal butterfly along each row and the spatial
// butterfly along each column. Under the row-major vectorization this equals
// encode_1d on index_map-ordered bits (X = F_S^T U F_T with row-vector
// convention); the equivalence is the binding contract and is tested
// exhaustively.
inline BitMatrix encode_2d(BitMatrix u, const CodeConfig& cfg) {
    if (u.rows != cfg.s_streams || u.cols != cfg.t_slots)
        throw DimensionError("encode_2d: matrix shape does not match CodeConfig");
    for (int s = 0; s < u.rows; ++s)
        detail::polar_transform_strided(u.data.data() + static_cast<std::size_t>(s) * u.cols, u.cols, 1);
    for (int t = 0; t < u.cols; ++t)
        detail::polar_transform_strided(u.data.data() + t, u.rows, u.cols);
    return u;
}

// Places K info bits at non-frozen indices in ascending order; frozen bits 0.
inline BitVector assemble_input(const BitVector& info_bits, const CodeConfig& cfg) {
    if (static_cast<int>(info_bits.size()) != cfg.k_info)
        throw DimensionError("assemble_input: info length must equal K");
    BitVector u(static_cast<std::size_t>(cfg.n_total), 0);
    std::size_t k = 0;
    for (int i = 0; i < cfg.n_total; ++i) {
        if (!cfg.frozen_mask[static_cast<std::size_t>(i)])
            u[static_cast<std::size_t>(i)] = info_bits[k++];
    }
    return u;
}

inline BitVector extract_info(const BitVector& u, const CodeConfig& cfg) {
    if (static_cast<int>(u.size()) != cfg.n_total)
        throw DimensionError("extract_info: input length must equal N");
    BitVector info;
    info.reserve(static_cast<std::size_t>(cfg.k_info));
    for (int i = 0; i < cfg.n_total; ++i) {
        if (!cfg.frozen_mask[static_cast<std::size_t>(i)])
            info.push_back(u[static_cast<std::size_t>(i)]);
    }
    return info;
}

// Reshape between the 1-D codeword and the S x T grid via index_map.
inline BitMatrix to_matrix(const BitVector& v, const CodeConfig& cfg) {
    if (static_cast<int>(v.size()) != cfg.n_total)
        throw DimensionError("to_matrix: length must equal N");
    BitMatrix m(cfg.s_streams, cfg.t_slots);
    m.data.assign(v.begin(), v.end());
    return m;
}

inline BitVector to_vector(const BitMatrix& m) {
    return BitVector(m.data.begin(), m.data.end());
}

} // namespace stpolar
