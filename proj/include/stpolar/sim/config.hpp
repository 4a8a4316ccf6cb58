#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "stpolar/construction.hpp"
#include "stpolar/errors.hpp"
#include "stpolar/modem.hpp"
#include "stpolar/scdec.hpp"

namespace stpolar {

// One experiment description. JSON keys match the field names; modulation is
// "bpsk"/"qpsk"/"16qam", construction "rca"/"ga_nonuniform"/"ga_uniform",
// csi "perfect"/"estimated". pilot_esn0_db is optional (absent = pilots tied
// to the data Es/N0); demapper and sc_kernel are optional switches.
struct SimConfig {
    int s_streams = 4;
    int l_rx = 8;
    int t_slots = 32;
    double rate = 0.5;
    std::string modulation = "bpsk";
    std::string construction = "rca";
    std::string csi = "perfect";
    int pilot_len = 0; // 0 = default 2S
    std::vector<double> esn0_db;
    std::uint64_t max_frames = 1000000;
    std::uint64_t target_frame_errors = 100;
    std::uint64_t seed = 1;
    int workers = 0; // 0 = hardware concurrency
    double pilot_esn0_db = std::numeric_limits<double>::quiet_NaN();
    std::string demapper = "logmap";
    std::string sc_kernel = "exact";

    int n_total() const { return s_streams * t_slots; }

    int k_info() const { return static_cast<int>(std::lround(rate * n_total())); }

    void validate() const {
        if (!is_pow2(s_streams) || !is_pow2(t_slots))
            throw ConfigError("s_streams and t_slots must be powers of two");
        if (s_streams > l_rx)
            throw ConfigError("need s_streams <= l_rx");
        if (!(rate > 0.0) || rate > 1.0)
            throw ConfigError("rate must be in (0, 1]");
        if (k_info() < 1)
            throw ConfigError("K = round(rate*N) must be >= 1");
        if (pilot_len != 0 && pilot_len < s_streams)
            throw ConfigError("pilot_len must be >= s_streams");
        if (esn0_db.empty())
            throw ConfigError("esn0_db must be non-empty");
        if (max_frames < 1)
            throw ConfigError("max_frames must be >= 1");
        if (workers < 0)
            throw ConfigError("workers must be >= 0");
        parse_construction(construction);
        Constellation::from_name(modulation);
        if (csi != "perfect" && csi != "estimated")
            throw ConfigError("csi must be 'perfect' or 'estimated'");
        if (demapper != "logmap" && demapper != "maxlog")
            throw ConfigError("demapper must be 'logmap' or 'maxlog'");
        if (sc_kernel != "exact" && sc_kernel != "minsum")
            throw ConfigError("sc_kernel must be 'exact' or 'minsum'");
        if (Constellation::from_name(modulation).bits_per_symbol > 1 &&
            t_slots % Constellation::from_name(modulation).bits_per_symbol != 0)
            throw ConfigError("bits per symbol must divide t_slots");
    }

    int effective_pilot_len() const { return pilot_len == 0 ? 2 * s_streams : pilot_len; }

    bool pilots_tied() const { return std::isnan(pilot_esn0_db); }

    static SimConfig from_json(const nlohmann::json& j) {
        static const std::vector<std::string> known{
            "s_streams", "l_rx", "t_slots", "rate", "modulation", "construction", "csi",
            "pilot_len", "esn0_db", "max_frames", "target_frame_errors", "seed", "workers",
            "pilot_esn0_db", "demapper", "sc_kernel"};
        for (const auto& item : j.items()) {
            bool ok = false;
            for (const auto& k : known)
                ok = ok || k == item.key();
            if (!ok)
                throw ConfigError("unknown config key: " + item.key());
        }
        SimConfig c;
        c.s_streams = j.value("s_streams", c.s_streams);
        c.l_rx = j.value("l_rx", c.l_rx);
        c.t_slots = j.value("t_slots", c.t_slots);
        c.rate = j.value("rate", c.rate);
        c.modulation = j.value("modulation", c.modulation);
        c.construction = j.value("construction", c.construction);
        c.csi = j.value("csi", c.csi);
        c.pilot_len = j.value("pilot_len", c.pilot_len);
        if (j.contains("esn0_db"))
            c.esn0_db = j.at("esn0_db").get<std::vector<double>>();
        c.max_frames = j.value("max_frames", c.max_frames);
        c.target_frame_errors = j.value("target_frame_errors", c.target_frame_errors);
        c.seed = j.value("seed", c.seed);
        c.workers = j.value("workers", c.workers);
        if (j.contains("pilot_esn0_db"))
            c.pilot_esn0_db = j.at("pilot_esn0_db").get<double>();
        c.demapper = j.value("demapper", c.demapper);
        c.sc_kernel = j.value("sc_kernel", c.sc_kernel);
        return c;
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"s_streams", s_streams},
                         {"l_rx", l_rx},
                         {"t_slots", t_slots},
                         {"rate", rate},
                         {"modulation", modulation},
                         {"construction", construction},
                         {"csi", csi},
                         {"pilot_len", effective_pilot_len()},
                         {"esn0_db", esn0_db},
                         {"max_frames", max_frames},
                         {"target_frame_errors", target_frame_errors},
                         {"seed", seed},
                         {"workers", workers},
                         {"demapper", demapper},
                         {"sc_kernel", sc_kernel}};
        if (!pilots_tied())
            j["pilot_esn0_db"] = pilot_esn0_db;
        return j;
    }

    // FNV-1a over the canonical serialization; identifies which outputs may
    // be merged. Worker count does not change results and is excluded.
    std::uint64_t config_hash() const {
        nlohmann::json j = to_json();
        j.erase("workers");
        const std::string s = j.dump();
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

// P2D_WORKERS overrides the config value; a CLI flag overrides both (the CLI
// writes the flag into the config before calling this).
inline int resolve_workers(const SimConfig& cfg) {
    int w = cfg.workers;
    if (const char* env = std::getenv("P2D_WORKERS")) {
        const int ew = std::atoi(env);
        if (ew > 0)
            w = ew;
    }
    if (w <= 0)
        w = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, w);
}

} // namespace stpolar
