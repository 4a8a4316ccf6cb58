#pragma once

#include <cmath>
#include <cstdint>

#include "stpolar/construction.hpp"
#include "stpolar/mimo.hpp"
#include "stpolar/modem.hpp"
#include "stpolar/polar.hpp"
#include "stpolar/rng.hpp"
#include "stpolar/scdec.hpp"
#include "stpolar/sim/config.hpp"

namespace stpolar {

struct TrialOutcome {
    std::uint64_t bit_errors = 0;
    bool frame_error = false;
};

// Per-config lookups resolved once, outside the hot loop.
struct TrialContext {
    ConstructionMethod method;
    const Constellation* constellation;
    bool estimated_csi;
    bool max_log;
    ScKernel kernel;

    static TrialContext make(const SimConfig& cfg) {
        return {parse_construction(cfg.construction), &Constellation::from_name(cfg.modulation),
                cfg.csi == "estimated", cfg.demapper == "maxlog",
                cfg.sc_kernel == "minsum" ? ScKernel::kMinSum : ScKernel::kExact};
    }
};

namespace detail {

// Pilot phase: transmit the orthogonal pilot block at per-antenna symbol
// energy es_pilot through H and estimate via LMMSE (n0 = 1).
inline CMatrix estimate_channel(const ChannelRealization& ch, int pilot_len, double es_pilot,
                                Rng& rng) {
    const int s = static_cast<int>(ch.h.cols());
    const CMatrix xp = std::sqrt(s * es_pilot) * pilot_matrix(s, pilot_len);
    CMatrix yp = ch.h * xp;
    for (int r = 0; r < yp.rows(); ++r)
        for (int c = 0; c < yp.cols(); ++c)
            yp(r, c) += rng.cgaussian(1.0);
    return lmmse_estimate(yp, xp, 1.0);
}

// Demap the received eigenmode symbols into the 1-D LLR vector ordered by
// index_map, using the CSI-visible per-stream gains.
inline std::vector<double> demap_grid(const CMatrix& ry, const std::vector<double>& vis_lambdas,
                                      double es, const Constellation& c, bool max_log) {
    const int s_streams = static_cast<int>(ry.rows());
    const int t_sym = static_cast<int>(ry.cols());
    const int mb = c.bits_per_symbol;
    const int t_slots = t_sym * mb;
    std::vector<double> llr(static_cast<std::size_t>(s_streams) * t_slots);
    double buf[8];
    for (int s = 0; s < s_streams; ++s) {
        const double gain = std::sqrt(vis_lambdas[static_cast<std::size_t>(s)]);
        for (int t = 0; t < t_sym; ++t) {
            llr_demap(ry(s, t), gain, es, 1.0, c, buf, max_log);
            for (int j = 0; j < mb; ++j)
                llr[static_cast<std::size_t>(s * t_slots + t * mb + j)] = buf[j];
        }
    }
    return llr;
}

} // namespace detail

// One full pipeline pass. Deterministic given (cfg.seed, trial_index): the
// trial substream drives the channel draw, pilot noise, info bits and data
// noise in a fixed order, so outcomes are independent of scheduling.
inline TrialOutcome run_trial(const SimConfig& cfg, const TrialContext& ctx, double esn0,
                              std::uint64_t trial_index) {
    Rng rng(substream_seed(cfg.seed, rngtag::kTrial, trial_index));
    const double es = esn0; // n0 = 1; the sweep moves symbol energy
    const int s_streams = cfg.s_streams, t_slots = cfg.t_slots, k_info = cfg.k_info();

    const ChannelRealization ch = sample_channel(rng, cfg.l_rx, s_streams);
    const EigenDecomposition truth = decompose(ch);
    EigenDecomposition visible;
    if (ctx.estimated_csi) {
        const double es_p = cfg.pilots_tied() ? es : std::pow(10.0, cfg.pilot_esn0_db / 10.0);
        const CMatrix h_hat = detail::estimate_channel(ch, cfg.effective_pilot_len(), es_p, rng);
        visible = decompose(ChannelRealization{h_hat});
    } else {
        visible = truth;
    }

    const SnrProfile profile = per_stream_snr(visible.lambdas, esn0);
    const FrozenSetResult fsr = construct(ctx.method, profile, t_slots, k_info);
    const CodeConfig code(s_streams, t_slots, k_info, fsr.frozen_set);

    BitVector info(static_cast<std::size_t>(k_info));
    for (auto& b : info)
        b = static_cast<std::uint8_t>(rng.bit());

    const BitMatrix coded = encode_2d(to_matrix(assemble_input(info, code), code), code);
    const Eigen::MatrixXcd tx = std::sqrt(es) * map_bits(coded, *ctx.constellation);
    const CMatrix ry = parallel_transmit(tx, truth, rng, 1.0);
    const std::vector<double> llr =
        detail::demap_grid(ry, visible.lambdas, es, *ctx.constellation, ctx.max_log);

    ScDecoder dec(code, ctx.kernel);
    const BitVector decoded = dec.decode(llr);

    TrialOutcome out;
    for (int i = 0; i < k_info; ++i)
        out.bit_errors += decoded[static_cast<std::size_t>(i)] != info[static_cast<std::size_t>(i)];
    out.frame_error = out.bit_errors > 0;
    return out;
}

inline TrialOutcome run_trial(const SimConfig& cfg, double esn0, std::uint64_t trial_index) {
    return run_trial(cfg, TrialContext::make(cfg), esn0, trial_index);
}

} // namespace stpolar
