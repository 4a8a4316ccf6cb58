#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "stpolar/sim/config.hpp"
#include "stpolar/sim/trial.hpp"

namespace stpolar {

// Stopping is evaluated at fixed batch boundaries so the set of executed
// trials -- and therefore every count -- is independent of worker count.
inline constexpr std::uint64_t kSweepBatch = 8192;

struct PointCounts {
    std::uint64_t config_hash = 0;
    double esn0_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
};

// Associative, commutative merge; refuses to mix incompatible partials.
inline PointCounts merge(const PointCounts& a, const PointCounts& b) {
    if (a.config_hash != b.config_hash)
        throw ConfigError("merge: mismatched config hashes");
    if (a.esn0_db != b.esn0_db)
        throw ConfigError("merge: mismatched sweep points");
    PointCounts r = a;
    r.frames += b.frames;
    r.bit_errors += b.bit_errors;
    r.frame_errors += b.frame_errors;
    return r;
}

inline std::pair<double, double> wilson_ci95(std::uint64_t k, std::uint64_t n) {
    if (n == 0)
        return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double denom = 1.0 + z * z / nn;
    const double center = (p + z * z / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
    // the k=0 / k=n bounds are exactly 0 / 1; don't let rounding push the
    // interval past the point estimate
    const double lo = (k == 0) ? 0.0 : std::max(0.0, center - half);
    const double hi = (k == n) ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

struct PointResult {
    double esn0_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double fer_ci95_lo = 0.0;
    double fer_ci95_hi = 0.0;
};

struct SimResult {
    std::vector<PointResult> points;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
};

namespace detail {

// Runs trials [lo, hi) across the worker pool; per-worker partials are merged
// at a single point. Counts are integer sums of per-trial outcomes, so the
// result does not depend on the partition.
inline PointCounts run_batch(const SimConfig& cfg, const TrialContext& ctx, double esn0,
                             double esn0_db, std::uint64_t lo, std::uint64_t hi, int workers) {
    const std::uint64_t hash = cfg.config_hash();
    std::vector<PointCounts> partial(static_cast<std::size_t>(workers));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        partial[static_cast<std::size_t>(w)] = PointCounts{hash, esn0_db, 0, 0, 0};
        pool.emplace_back([&, w] {
            try {
                PointCounts& acc = partial[static_cast<std::size_t>(w)];
                for (std::uint64_t i = lo + static_cast<std::uint64_t>(w); i < hi;
                     i += static_cast<std::uint64_t>(workers)) {
                    const TrialOutcome t = run_trial(cfg, ctx, esn0, i);
                    ++acc.frames;
                    acc.bit_errors += t.bit_errors;
                    acc.frame_errors += t.frame_error ? 1 : 0;
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    // a failed trial aborts the sweep with its diagnostic, never silently
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    PointCounts total{hash, esn0_db, 0, 0, 0};
    for (const auto& p : partial)
        total = merge(total, p);
    return total;
}

} // namespace detail

inline PointResult finalize_point(const PointCounts& c, int k_info) {
    PointResult r;
    r.esn0_db = c.esn0_db;
    r.frames = c.frames;
    r.bit_errors = c.bit_errors;
    r.frame_errors = c.frame_errors;
    const double nf = static_cast<double>(c.frames);
    r.ber = c.frames ? static_cast<double>(c.bit_errors) / (nf * k_info) : 0.0;
    r.fer = c.frames ? static_cast<double>(c.frame_errors) / nf : 0.0;
    const auto ci = wilson_ci95(c.frame_errors, c.frames);
    r.fer_ci95_lo = ci.first;
    r.fer_ci95_hi = ci.second;
    return r;
}

// Monte Carlo sweep: per point, run trials until target_frame_errors or
// max_frames, checking at batch boundaries only.
inline SimResult run_sweep(const SimConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const TrialContext ctx = TrialContext::make(cfg);
    const int workers = resolve_workers(cfg);
    SimResult res;
    res.config_hash = cfg.config_hash();
    res.seed = cfg.seed;
    for (double db : cfg.esn0_db) {
        const double esn0 = std::pow(10.0, db / 10.0);
        PointCounts total{res.config_hash, db, 0, 0, 0};
        while (total.frame_errors < cfg.target_frame_errors && total.frames < cfg.max_frames) {
            const std::uint64_t batch = std::min<std::uint64_t>(kSweepBatch, cfg.max_frames - total.frames);
            total = merge(total, detail::run_batch(cfg, ctx, esn0, db, total.frames,
                                                   total.frames + batch, workers));
        }
        res.points.push_back(finalize_point(total, cfg.k_info()));
    }
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline std::string sweep_csv(const SimResult& res) {
    std::string out = "esn0_db,frames,bit_errors,frame_errors,ber,fer,fer_ci95_lo,fer_ci95_hi\n";
    char line[256];
    for (const auto& p : res.points) {
        std::snprintf(line, sizeof(line), "%.10g,%llu,%llu,%llu,%.12g,%.12g,%.12g,%.12g\n",
                      p.esn0_db, static_cast<unsigned long long>(p.frames),
                      static_cast<unsigned long long>(p.bit_errors),
                      static_cast<unsigned long long>(p.frame_errors), p.ber, p.fer, p.fer_ci95_lo,
                      p.fer_ci95_hi);
        out += line;
    }
    return out;
}

} // namespace stpolar
