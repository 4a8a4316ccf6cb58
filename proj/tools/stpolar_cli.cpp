// Command-line front end: code construction, Monte Carlo BER/FER sweeps, the
// eigen-spectrum study and the CSI frozen-set alignment experiment. Config is
// a single JSON document; flags override JSON; P2D_WORKERS overrides the
// worker count. All outputs are CSV with a one-line header.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stpolar/construction.hpp"
#include "stpolar/mimo.hpp"
#include "stpolar/sim/config.hpp"
#include "stpolar/sim/experiments.hpp"
#include "stpolar/sim/sweep.hpp"

using namespace stpolar;

namespace {

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return SimConfig::from_json(j);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open output file: " + path);
    out << content;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            v.push_back(std::stod(tok));
    return v;
}

std::vector<std::pair<int, int>> parse_shapes(const std::string& s) {
    std::vector<std::pair<int, int>> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto x = tok.find('x');
        if (x == std::string::npos)
            throw ConfigError("bad shape '" + tok + "', expected SxL");
        v.emplace_back(std::stoi(tok.substr(0, x)), std::stoi(tok.substr(x + 1)));
    }
    return v;
}

struct Overrides {
    std::string construction, modulation, csi, esn0_db, pilot_esn0_db;
    std::uint64_t seed = 0, max_frames = 0, target_fe = 0;
    int workers = -1, pilot_len = -1;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--construction", construction, "rca | ga_nonuniform | ga_uniform");
        cmd->add_option("--modulation", modulation, "bpsk | qpsk | 16qam");
        cmd->add_option("--csi", csi, "perfect | estimated");
        cmd->add_option("--esn0-db", esn0_db, "comma-separated sweep points (dB)");
        cmd->add_option("--pilot-esn0-db", pilot_esn0_db, "fixed pilot Es/N0 (dB); default tied");
        cmd->add_option("--seed", seed, "64-bit RNG seed");
        cmd->add_option("--max-frames", max_frames, "frame cap per sweep point");
        cmd->add_option("--target-frame-errors", target_fe, "stop after this many frame errors");
        cmd->add_option("--workers", workers, "worker threads (0 = hardware)");
        cmd->add_option("--pilot-len", pilot_len, "pilot length L_p (default 2S)");
    }

    void apply(CLI::App* cmd, SimConfig& cfg) const {
        if (cmd->count("--construction"))
            cfg.construction = construction;
        if (cmd->count("--modulation"))
            cfg.modulation = modulation;
        if (cmd->count("--csi"))
            cfg.csi = csi;
        if (cmd->count("--esn0-db"))
            cfg.esn0_db = parse_double_list(esn0_db);
        if (cmd->count("--pilot-esn0-db"))
            cfg.pilot_esn0_db = std::stod(pilot_esn0_db);
        if (cmd->count("--seed"))
            cfg.seed = seed;
        if (cmd->count("--max-frames"))
            cfg.max_frames = max_frames;
        if (cmd->count("--target-frame-errors"))
            cfg.target_frame_errors = target_fe;
        if (cmd->count("--workers"))
            cfg.workers = workers;
        if (cmd->count("--pilot-len"))
            cfg.pilot_len = pilot_len;
    }
};

int cmd_construct(const std::string& config_path, const std::string& out_path, CLI::App* cmd,
                  const Overrides& ov, double esn0_db_flag, const std::string& lambdas_csv) {
    SimConfig cfg = load_config(config_path);
    ov.apply(cmd, cfg);
    cfg.validate();
    const double esn0_db = cmd->count("--construct-esn0-db") ? esn0_db_flag : cfg.esn0_db.front();
    const double esn0 = std::pow(10.0, esn0_db / 10.0);

    std::vector<double> lambdas;
    if (!lambdas_csv.empty()) {
        lambdas = parse_double_list(lambdas_csv);
        if (static_cast<int>(lambdas.size()) != cfg.s_streams)
            throw ConfigError("--lambdas must list exactly s_streams values");
    } else {
        Rng rng(substream_seed(cfg.seed, rngtag::kTrial, 0));
        lambdas = decompose(sample_channel(rng, cfg.l_rx, cfg.s_streams)).lambdas;
    }
    const SnrProfile profile = per_stream_snr(lambdas, esn0);
    const FrozenSetResult fsr =
        construct(parse_construction(cfg.construction), profile, cfg.t_slots, cfg.k_info());
    write_file(out_path, construction_csv(fsr, cfg.s_streams, cfg.t_slots));
    std::printf("wrote %s (N=%d, K=%d, %s at %.6g dB)\n", out_path.c_str(), cfg.n_total(),
                cfg.k_info(), cfg.construction.c_str(), esn0_db);
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path, CLI::App* cmd,
                 const Overrides& ov) {
    SimConfig cfg = load_config(config_path);
    ov.apply(cmd, cfg);
    cfg.validate();
    const SimResult res = run_sweep(cfg);
    write_file(out_path, sweep_csv(res));
    nlohmann::json meta{{"config", cfg.to_json()},
                        {"config_hash", res.config_hash},
                        {"seed", res.seed},
                        {"wall_time_s", res.wall_time_s}};
    write_file(out_path + ".meta.json", meta.dump(2) + "\n");
    std::printf("wrote %s (+.meta.json), config_hash=%016llx, %.2fs\n", out_path.c_str(),
                static_cast<unsigned long long>(res.config_hash), res.wall_time_s);
    return 0;
}

int cmd_spectrum(const std::string& shapes, int realizations, std::uint64_t seed,
                 const std::string& out_path, std::string means_path) {
    if (means_path.empty())
        means_path = out_path + ".means.csv";
    const SpectrumOutput out = spectrum_experiment(parse_shapes(shapes), realizations, seed);
    write_file(out_path, out.csv);
    write_file(means_path, out.means_csv);
    std::printf("wrote %s and %s\n", out_path.c_str(), means_path.c_str());
    return 0;
}

int cmd_csialign(const std::string& config_path, const std::string& out_path, CLI::App* cmd,
                 const Overrides& ov, std::uint64_t trials, const std::string& pilot_sweep) {
    SimConfig cfg = load_config(config_path);
    ov.apply(cmd, cfg);
    const auto points = pilot_sweep.empty()
                            ? csi_alignment_experiment(cfg, trials)
                            : csi_alignment_pilot_sweep(cfg, trials, parse_double_list(pilot_sweep));
    write_file(out_path, csialign_csv(points));
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spatiotemporal 2-D polar code link-level simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, lambdas_csv, shapes, means_path, pilot_sweep;
    double construct_esn0 = 0.0;
    int realizations = 10000;
    std::uint64_t spectrum_seed = 1, trials = 1000;
    Overrides ov;

    auto* c_construct = app.add_subcommand("construct", "emit a frozen-set construction CSV");
    c_construct->add_option("--config", config_path, "config JSON")->required();
    c_construct->add_option("--out", out_path, "output CSV")->required();
    c_construct->add_option("--construct-esn0-db", construct_esn0,
                            "Es/N0 (dB) to construct at; default first sweep point");
    c_construct->add_option("--lambdas", lambdas_csv,
                            "comma-separated eigenvalues; default samples a channel from seed");
    ov.add_flags(c_construct);

    auto* c_sim = app.add_subcommand("simulate", "run a BER/FER sweep");
    c_sim->add_option("--config", config_path, "config JSON")->required();
    c_sim->add_option("--out", out_path, "output CSV")->required();
    ov.add_flags(c_sim);

    auto* c_spec = app.add_subcommand("spectrum", "eigen-spectrum study");
    c_spec->add_option("--configs", shapes, "shapes, e.g. 4x8,8x16")->required();
    c_spec->add_option("--realizations", realizations, "channel draws per shape");
    c_spec->add_option("--seed", spectrum_seed, "RNG seed");
    c_spec->add_option("--out", out_path, "output CSV")->required();
    c_spec->add_option("--means-out", means_path, "per-index means CSV");

    auto* c_csi = app.add_subcommand("csialign", "two-sided frozen-set alignment experiment");
    c_csi->add_option("--config", config_path, "config JSON (csi must be 'estimated')")->required();
    c_csi->add_option("--out", out_path, "output CSV")->required();
    c_csi->add_option("--trials", trials, "trials per sweep point");
    c_csi->add_option("--pilot-sweep-db", pilot_sweep,
                      "comma-separated pilot Es/N0 list (dB) at the first data point");
    ov.add_flags(c_csi);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_construct->parsed())
            return cmd_construct(config_path, out_path, c_construct, ov, construct_esn0, lambdas_csv);
        if (c_sim->parsed())
            return cmd_simulate(config_path, out_path, c_sim, ov);
        if (c_spec->parsed())
            return cmd_spectrum(shapes, realizations, spectrum_seed, out_path, means_path);
        if (c_csi->parsed())
            return cmd_csialign(config_path, out_path, c_csi, ov, trials, pilot_sweep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
