#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "stpolar/sim/config.hpp"
#include "stpolar/sim/trial.hpp"

namespace stpolar {

// Eigen-spectrum study over a list of (S, L) shapes. The main CSV has exactly
// configs x realizations x S rows; per-index means go to a companion table.
struct SpectrumOutput {
    std::string csv;       // config,realization,k,lambda_k
    std::string means_csv; // config,k,mean_lambda
};

inline SpectrumOutput spectrum_experiment(const std::vector<std::pair<int, int>>& configs,
                                          int realizations, std::uint64_t seed) {
    SpectrumOutput out;
    out.csv = "config,realization,k,lambda_k\n";
    out.means_csv = "config,k,mean_lambda\n";
    char line[128];
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        const auto [s, l] = configs[ci];
        if (s > l || s < 1)
            throw ConfigError("spectrum_experiment: need S <= L, S >= 1");
        std::vector<double> mean(static_cast<std::size_t>(s), 0.0);
        for (int r = 0; r < realizations; ++r) {
            Rng rng(substream_seed(seed, rngtag::kSpectrum,
                                   (static_cast<std::uint64_t>(ci) << 40) | static_cast<std::uint64_t>(r)));
            const auto d = decompose(sample_channel(rng, l, s));
            for (int k = 0; k < s; ++k) {
                std::snprintf(line, sizeof(line), "%dx%d,%d,%d,%.10g\n", s, l, r, k,
                              d.lambdas[static_cast<std::size_t>(k)]);
                out.csv += line;
                mean[static_cast<std::size_t>(k)] += d.lambdas[static_cast<std::size_t>(k)];
            }
        }
        for (int k = 0; k < s; ++k) {
            std::snprintf(line, sizeof(line), "%dx%d,%d,%.10g\n", s, l, k,
                          mean[static_cast<std::size_t>(k)] / realizations);
            out.means_csv += line;
        }
    }
    return out;
}

// Frozen-set alignment under two-sided independent channel estimation. Per
// trial: one true H, two independent pilot-noise realizations; the encoder
// builds its frozen set from the first estimate, the decoder from the
// second. Reports the symmetric-difference fraction and the end-to-end BER of
// the mismatched pair next to the matched (shared-estimate) reference.
struct CsiAlignPoint {
    double esn0_db = 0.0;
    double pilot_esn0_db = 0.0;
    std::uint64_t trials = 0;
    double mismatch_frac = 0.0;
    double ber_mismatched = 0.0;
    double ber_matched = 0.0;
};

namespace detail {

inline CsiAlignPoint csialign_point(const SimConfig& cfg, const TrialContext& ctx, double data_db,
                                    double pilot_db, std::uint64_t trials) {
    const int s_streams = cfg.s_streams, t_slots = cfg.t_slots, k_info = cfg.k_info();
    const int n = s_streams * t_slots;
    const double esn0 = std::pow(10.0, data_db / 10.0);
    const double es = esn0;
    const double es_p = std::pow(10.0, pilot_db / 10.0);
    CsiAlignPoint pt;
    pt.esn0_db = data_db;
    pt.pilot_esn0_db = pilot_db;
    pt.trials = trials;
    double mismatch_acc = 0.0;
    std::uint64_t mm_bits = 0, m_bits = 0;
    for (std::uint64_t it = 0; it < trials; ++it) {
        Rng rng(substream_seed(cfg.seed, rngtag::kCsiAlign, it));
        const ChannelRealization ch = sample_channel(rng, cfg.l_rx, s_streams);
        const EigenDecomposition truth = decompose(ch);
        const CMatrix h_tx = detail::estimate_channel(ch, cfg.effective_pilot_len(), es_p, rng);
        const CMatrix h_rx = detail::estimate_channel(ch, cfg.effective_pilot_len(), es_p, rng);
        const EigenDecomposition vis_tx = decompose(ChannelRealization{h_tx});
        const EigenDecomposition vis_rx = decompose(ChannelRealization{h_rx});

        const FrozenSetResult f_tx =
            construct(ctx.method, per_stream_snr(vis_tx.lambdas, esn0), t_slots, k_info);
        const FrozenSetResult f_rx =
            construct(ctx.method, per_stream_snr(vis_rx.lambdas, esn0), t_slots, k_info);

        // |F_tx ^ F_rx| = |F_tx| + |F_rx| - 2 |intersection|
        std::vector<std::uint8_t> in_tx(static_cast<std::size_t>(n), 0);
        for (int f : f_tx.frozen_set)
            in_tx[static_cast<std::size_t>(f)] = 1;
        int inter = 0;
        for (int f : f_rx.frozen_set)
            inter += in_tx[static_cast<std::size_t>(f)];
        const int sym_diff = static_cast<int>(f_tx.frozen_set.size()) +
                             static_cast<int>(f_rx.frozen_set.size()) - 2 * inter;
        mismatch_acc += static_cast<double>(sym_diff) / n;

        const CodeConfig code_tx(s_streams, t_slots, k_info, f_tx.frozen_set);
        const CodeConfig code_rx(s_streams, t_slots, k_info, f_rx.frozen_set);

        BitVector info(static_cast<std::size_t>(k_info));
        for (auto& b : info)
            b = static_cast<std::uint8_t>(rng.bit());
        const BitVector u = assemble_input(info, code_tx);
        const BitMatrix coded = encode_2d(to_matrix(u, code_tx), code_tx);
        const Eigen::MatrixXcd tx_sym = std::sqrt(es) * map_bits(coded, *ctx.constellation);
        const CMatrix ry = parallel_transmit(tx_sym, truth, rng, 1.0);

        // mismatched: decoder assumes the rx-side estimate end to end
        const std::vector<double> llr_rx =
            detail::demap_grid(ry, vis_rx.lambdas, es, *ctx.constellation, ctx.max_log);
        ScDecoder dec_rx(code_rx, ctx.kernel);
        const BitVector& uhat_mm = dec_rx.decode_uhat(llr_rx);
        // matched reference: both ends share the tx-side estimate
        const std::vector<double> llr_tx =
            detail::demap_grid(ry, vis_tx.lambdas, es, *ctx.constellation, ctx.max_log);
        ScDecoder dec_tx(code_tx, ctx.kernel);
        const BitVector& uhat_m = dec_tx.decode_uhat(llr_tx);

        for (int i = 0; i < n; ++i) {
            if (in_tx[static_cast<std::size_t>(i)])
                continue; // compare over the transmitter's info positions
            mm_bits += uhat_mm[static_cast<std::size_t>(i)] != u[static_cast<std::size_t>(i)];
            m_bits += uhat_m[static_cast<std::size_t>(i)] != u[static_cast<std::size_t>(i)];
        }
    }
    pt.mismatch_frac = mismatch_acc / static_cast<double>(trials);
    pt.ber_mismatched = static_cast<double>(mm_bits) / (static_cast<double>(trials) * k_info);
    pt.ber_matched = static_cast<double>(m_bits) / (static_cast<double>(trials) * k_info);
    return pt;
}

} // namespace detail

// One point per entry of cfg.esn0_db, pilots tied to the data Es/N0 unless
// cfg.pilot_esn0_db fixes them.
inline std::vector<CsiAlignPoint> csi_alignment_experiment(const SimConfig& cfg,
                                                           std::uint64_t trials) {
    cfg.validate();
    if (cfg.csi != "estimated")
        throw ConfigError("csi_alignment_experiment: requires csi = estimated");
    const TrialContext ctx = TrialContext::make(cfg);
    std::vector<CsiAlignPoint> points;
    for (double db : cfg.esn0_db) {
        const double pilot_db = cfg.pilots_tied() ? db : cfg.pilot_esn0_db;
        points.push_back(detail::csialign_point(cfg, ctx, db, pilot_db, trials));
    }
    return points;
}

// Pilot-SNR sweep at a fixed data operating point (the first esn0_db entry):
// isolates estimation quality from the construction threshold, which is what
// the alignment-vs-pilot-energy question asks.
inline std::vector<CsiAlignPoint> csi_alignment_pilot_sweep(const SimConfig& cfg,
                                                            std::uint64_t trials,
                                                            const std::vector<double>& pilot_dbs) {
    cfg.validate();
    if (cfg.csi != "estimated")
        throw ConfigError("csi_alignment_pilot_sweep: requires csi = estimated");
    if (pilot_dbs.empty())
        throw ConfigError("csi_alignment_pilot_sweep: need at least one pilot SNR");
    const TrialContext ctx = TrialContext::make(cfg);
    std::vector<CsiAlignPoint> points;
    for (double pdb : pilot_dbs)
        points.push_back(detail::csialign_point(cfg, ctx, cfg.esn0_db.front(), pdb, trials));
    return points;
}

inline std::string csialign_csv(const std::vector<CsiAlignPoint>& pts) {
    std::string out = "esn0_db,pilot_esn0_db,trials,mismatch_frac,ber_mismatched,ber_matched\n";
    char line[192];
    for (const auto& p : pts) {
        std::snprintf(line, sizeof(line), "%.10g,%.10g,%llu,%.12g,%.12g,%.12g\n", p.esn0_db,
                      p.pilot_esn0_db, static_cast<unsigned long long>(p.trials), p.mismatch_frac,
                      p.ber_mismatched, p.ber_matched);
        out += line;
    }
    return out;
}

} // namespace stpolar
