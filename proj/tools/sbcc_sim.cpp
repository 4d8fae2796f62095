#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sbcc/simulator.hpp"

namespace {

using nlohmann::json;

template <typename T>
void get_if(const json& j, const char* key, T& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

sbcc::SimConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    json j = json::parse(f);

    sbcc::SimConfig cfg;
    get_if(j, "T", cfg.block_len);
    get_if(j, "block_len", cfg.block_len);
    get_if(j, "L", cfg.chain_len);
    get_if(j, "chain_len", cfg.chain_len);
    get_if(j, "frames", cfg.frames);
    get_if(j, "ebn0_db", cfg.ebn0_db);
    get_if(j, "seed", cfg.seed);
    get_if(j, "threads", cfg.threads);
    get_if(j, "out_dir", cfg.out_dir);
    get_if(j, "emit_block_histogram", cfg.emit_block_histogram);
    get_if(j, "min_bit_errors", cfg.min_bit_errors);
    get_if(j, "min_frame_errors", cfg.min_frame_errors);
    if (j.contains("decoder")) {
        const json& d = j.at("decoder");
        get_if(d, "w", cfg.decoder.w);
        get_if(d, "w_max", cfg.decoder.w_max);
        get_if(d, "i1", cfg.decoder.i1);
        get_if(d, "i2", cfg.decoder.i2);
        get_if(d, "tau", cfg.decoder.tau);
        get_if(d, "theta", cfg.decoder.theta);
        get_if(d, "n_r", cfg.decoder.n_r);
        get_if(d, "gamma", cfg.decoder.gamma);
        get_if(d, "extension_enabled", cfg.decoder.extension_enabled);
        get_if(d, "resync_enabled", cfg.decoder.resync_enabled);
        get_if(d, "stopping_enabled", cfg.decoder.stopping_enabled);
    }
    return cfg;
}

void apply_profile(sbcc::DecoderConfig& d, const std::string& profile) {
    if (profile == "baseline") {
        d.extension_enabled = false;
        d.resync_enabled = false;
        d.stopping_enabled = false;
    } else if (profile == "extension") {
        d.extension_enabled = true;
        d.resync_enabled = false;
        d.stopping_enabled = false;
    } else if (profile == "extension+resync") {
        d.extension_enabled = true;
        d.resync_enabled = true;
        d.stopping_enabled = false;
    } else if (profile == "all-on") {
        d.extension_enabled = true;
        d.resync_enabled = true;
        d.stopping_enabled = true;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "BER/BLER simulator for blockwise braided streaming codes with "
        "sliding-window decoding"};

    std::string config_path, out_dir, profile;
    std::vector<double> ebn0;
    std::uint64_t frames = 0, seed = 0;
    int threads = 0;
    bool emit_hist = false;

    app.add_option("--config", config_path, "JSON config file (see README)");
    auto* opt_ebn0 =
        app.add_option("--ebn0", ebn0, "Eb/N0 points in dB, comma separated")
            ->delimiter(',');
    auto* opt_frames = app.add_option("--frames", frames, "frames per point");
    auto* opt_seed = app.add_option("--seed", seed, "master RNG seed");
    auto* opt_out = app.add_option("--out", out_dir, "output directory");
    auto* opt_threads = app.add_option("--threads", threads, "worker threads");
    app.add_option("--profile", profile,
                   "decoder feature preset")
        ->check(CLI::IsMember({"baseline", "extension", "extension+resync", "all-on"}));
    app.add_flag("--emit-block-histogram", emit_hist,
                 "write per-block bit-error tables");

    CLI11_PARSE(app, argc, argv);

    try {
        sbcc::SimConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (opt_ebn0->count()) cfg.ebn0_db = ebn0;
        if (opt_frames->count()) cfg.frames = frames;
        if (opt_seed->count()) cfg.seed = seed;
        if (opt_out->count()) cfg.out_dir = out_dir;
        if (opt_threads->count()) cfg.threads = threads;
        if (emit_hist) cfg.emit_block_histogram = true;
        if (!profile.empty()) apply_profile(cfg.decoder, profile);
        cfg.validate();

        const sbcc::SweepResult sweep = sbcc::run_sweep(cfg);
        sbcc::emit_reports(cfg, sweep);

        std::cout << sbcc::format_summary_csv(sweep);
        std::fprintf(stderr, "wrote %s/summary.csv and manifest.json (%.1f s)\n",
                     cfg.out_dir.c_str(), sweep.elapsed_seconds);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
