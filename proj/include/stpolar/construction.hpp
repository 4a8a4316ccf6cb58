#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "stpolar/errors.hpp"
#include "stpolar/ga.hpp"
#include "stpolar/polar.hpp"
#include "stpolar/rca.hpp"

namespace stpolar {

// Eigenvalues below this floor are clamped before taking logs so a rank-
// deficient draw cannot produce -inf reliabilities; ordering is preserved.
inline constexpr double kGammaFloor = 1e-12;

// Per-stream linear SNRs, sorted descending to match the eigenvalue order.
struct SnrProfile {
    std::vector<double> gammas;

    explicit SnrProfile(std::vector<double> g) : gammas(std::move(g)) {
        for (double v : gammas)
            if (!(v > 0.0) || !std::isfinite(v))
                throw DomainError("SnrProfile: SNRs must be finite and > 0");
    }

    int streams() const { return static_cast<int>(gammas.size()); }
};

// Per-position log-domain reliabilities xi_i = ln gamma_i.
struct ReliabilityVector {
    std::vector<double> xis;
};

enum class ConstructionMethod { kRca, kGaNonUniform, kGaUniform };

inline ConstructionMethod parse_construction(const std::string& s) {
    if (s == "rca")
        return ConstructionMethod::kRca;
    if (s == "ga_nonuniform")
        return ConstructionMethod::kGaNonUniform;
    if (s == "ga_uniform")
        return ConstructionMethod::kGaUniform;
    throw ConfigError("unknown construction method: " + s);
}

inline const char* to_string(ConstructionMethod m) {
    switch (m) {
    case ConstructionMethod::kRca: return "rca";
    case ConstructionMethod::kGaNonUniform: return "ga_nonuniform";
    case ConstructionMethod::kGaUniform: return "ga_uniform";
    }
    return "?";
}

struct FrozenSetResult {
    std::vector<int> order;      // all indices, most reliable first
    std::vector<int> frozen_set; // the N-K least reliable, ascending
    ReliabilityVector reliabilities;
};

// gamma_k = lambda_k * Es/N0, with the eigenvalue floor applied.
inline SnrProfile per_stream_snr(const std::vector<double>& lambdas, double esn0) {
    if (!(esn0 > 0.0))
        throw DomainError("per_stream_snr: esn0 must be > 0");
    std::vector<double> g;
    g.reserve(lambdas.size());
    for (double l : lambdas) {
        if (l < 0.0)
            throw DomainError("per_stream_snr: eigenvalues must be >= 0");
        g.push_back(std::max(l * esn0, kGammaFloor));
    }
    return SnrProfile(std::move(g));
}

// Spatial log-reliability profile replicated over the T temporal positions:
// position index_map(s,t) carries ln gamma_s, consistent with the row-major
// bijection used by the encoder.
inline ReliabilityVector build_initialization(const SnrProfile& profile, int t_slots) {
    const int s_streams = profile.streams();
    if (!is_pow2(s_streams) || !is_pow2(t_slots))
        throw DimensionError("build_initialization: S and T must be powers of two");
    ReliabilityVector out;
    out.xis.resize(static_cast<std::size_t>(s_streams) * t_slots);
    for (int s = 0; s < s_streams; ++s) {
        const double xi = std::log(profile.gammas[static_cast<std::size_t>(s)]);
        for (int t = 0; t < t_slots; ++t)
            out.xis[static_cast<std::size_t>(index_map(s, t, s_streams, t_slots))] = xi;
    }
    return out;
}

// GA initialization means: 4*gamma_s per position, or 4*mean(gamma) for the
// uniform-assumption baseline.
inline std::vector<double> ga_init_means(const SnrProfile& profile, int t_slots, bool uniform) {
    const int s_streams = profile.streams();
    if (!is_pow2(s_streams) || !is_pow2(t_slots))
        throw DimensionError("ga_init_means: S and T must be powers of two");
    double mean_gamma = 0.0;
    if (uniform) {
        mean_gamma = std::accumulate(profile.gammas.begin(), profile.gammas.end(), 0.0) /
                     profile.streams();
    }
    std::vector<double> means(static_cast<std::size_t>(s_streams) * t_slots);
    for (int s = 0; s < s_streams; ++s) {
        const double m = 4.0 * (uniform ? mean_gamma : profile.gammas[static_cast<std::size_t>(s)]);
        for (int t = 0; t < t_slots; ++t)
            means[static_cast<std::size_t>(index_map(s, t, s_streams, t_slots))] = m;
    }
    return means;
}

// Indices sorted by descending reliability; on ties the lower index is
// treated as less reliable (frozen first), which makes degenerate uniform
// cases deterministic.
inline FrozenSetResult select_frozen(const ReliabilityVector& rel, int k_info) {
    const int n = static_cast<int>(rel.xis.size());
    if (k_info <= 0 || k_info > n)
        throw RangeError("select_frozen: K must satisfy 0 < K <= N");
    FrozenSetResult res;
    res.reliabilities = rel;
    res.order.resize(static_cast<std::size_t>(n));
    std::iota(res.order.begin(), res.order.end(), 0);
    std::sort(res.order.begin(), res.order.end(), [&](int a, int b) {
        const double xa = rel.xis[static_cast<std::size_t>(a)];
        const double xb = rel.xis[static_cast<std::size_t>(b)];
        if (xa != xb)
            return xa > xb;
        return a > b;
    });
    res.frozen_set.assign(res.order.begin() + k_info, res.order.end());
    std::sort(res.frozen_set.begin(), res.frozen_set.end());
    return res;
}

// Reliability evolution + frozen-set selection for the configured method.
inline FrozenSetResult construct(ConstructionMethod method, const SnrProfile& profile, int t_slots,
                                 int k_info) {
    ReliabilityVector rel;
    switch (method) {
    case ConstructionMethod::kRca:
        rel.xis = rca_evolve(build_initialization(profile, t_slots).xis);
        break;
    case ConstructionMethod::kGaNonUniform:
    case ConstructionMethod::kGaUniform: {
        const bool uniform = method == ConstructionMethod::kGaUniform;
        std::vector<double> means = ga_evolve(ga_init_means(profile, t_slots, uniform));
        rel.xis.resize(means.size());
        // equivalent log-SNR of a mean-m LLR under the m = 4*gamma model;
        // strictly monotone, so the selection order is unchanged
        for (std::size_t i = 0; i < means.size(); ++i)
            rel.xis[i] = std::log(means[i] / 4.0);
        break;
    }
    }
    return select_frozen(rel, k_info);
}

// Construction CSV: one row per bit index.
inline std::string construction_csv(const FrozenSetResult& fsr, int s_streams, int t_slots) {
    const int n = static_cast<int>(fsr.order.size());
    std::vector<int> rank(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
        rank[static_cast<std::size_t>(fsr.order[static_cast<std::size_t>(r)])] = r;
    std::vector<std::uint8_t> frozen(static_cast<std::size_t>(n), 0);
    for (int f : fsr.frozen_set)
        frozen[static_cast<std::size_t>(f)] = 1;
    std::string out = "index,stream,slot,xi_hat,rank,frozen\n";
    char line[128];
    for (int i = 0; i < n; ++i) {
        const auto [s, t] = index_unmap(i, s_streams, t_slots);
        std::snprintf(line, sizeof(line), "%d,%d,%d,%.10g,%d,%d\n", i, s, t,
                      fsr.reliabilities.xis[static_cast<std::size_t>(i)], rank[static_cast<std::size_t>(i)],
                      static_cast<int>(frozen[static_cast<std::size_t>(i)]));
        out += line;
    }
    return out;
}

} // namespace stpolar
