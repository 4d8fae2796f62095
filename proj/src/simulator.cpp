#include "sbcc/simulator.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "sbcc/channel.hpp"
#include "sbcc/llr.hpp"

namespace sbcc {

namespace {

constexpr std::uint64_t kTagPermutor = 0x5045524dULL;  // "PERM"
constexpr std::uint64_t kTagFrame = 0x4652414dULL;     // "FRAM"
constexpr double kRate = 1.0 / 3.0;

}  // namespace

void SimConfig::validate() const {
    if (block_len == 0) throw std::invalid_argument("sim: block_len must be > 0");
    if (chain_len == 0) throw std::invalid_argument("sim: chain_len must be > 0");
    if (frames == 0) throw std::invalid_argument("sim: frames must be > 0");
    if (ebn0_db.empty()) throw std::invalid_argument("sim: ebn0_db must be non-empty");
    if (threads < 1) throw std::invalid_argument("sim: threads must be >= 1");
    decoder.validate();
}

void PointStats::merge(const PointStats& other) {
    frames += other.frames;
    blocks += other.blocks;
    bits += other.bits;
    bit_errors += other.bit_errors;
    block_errors += other.block_errors;
    frame_errors += other.frame_errors;
    resync_events += other.resync_events;
    window_sum += other.window_sum;
    window_targets += other.window_targets;
    iter_sum += other.iter_sum;
    iter_targets += other.iter_targets;
    if (block_error_hist.size() < other.block_error_hist.size())
        block_error_hist.resize(other.block_error_hist.size(), 0);
    for (std::size_t i = 0; i < other.block_error_hist.size(); ++i)
        block_error_hist[i] += other.block_error_hist[i];
}

PermutorSet make_permutors(const SimConfig& cfg) {
    PermutorSet set;
    set.seeds.resize(3);
    BlockPermutor* perms[3] = {&set.p0, &set.p1, &set.p2};
    for (std::uint64_t j = 0; j < 3; ++j) {
        set.seeds[j] = derive_seed(cfg.seed, kTagPermutor, j);
        Xoshiro256pp rng(set.seeds[j]);
        *perms[j] = make_random_permutor(cfg.block_len, rng);
    }
    return set;
}

std::uint64_t frame_seed(std::uint64_t master, std::size_t point_index,
                         std::uint64_t frame_index) {
    return derive_seed(master, kTagFrame + point_index, frame_index);
}

FrameStats run_frame(const SimConfig& cfg, const PermutorSet& perms,
                     double ebn0_db, std::uint64_t seed) {
    const std::size_t T = cfg.block_len;
    const std::size_t L = cfg.chain_len;
    Xoshiro256pp rng(seed);
    const double sigma = awgn_sigma(ebn0_db, kRate);

    EncoderChain chain(T, perms.p0, perms.p1, perms.p2);
    WindowDecoder dec(cfg.decoder, T, perms.p0, perms.p1, perms.p2);

    FrameStats fs;
    fs.block_bit_errors.assign(L, 0);
    std::vector<std::vector<std::uint8_t>> tx_bits(L);
    std::size_t tx = 0;

    // Lazy transmission: blocks are generated in stream order exactly when
    // the decoder asks for them (initial fill, shift or window extension).
    auto transmit_one = [&]() -> bool {
        if (tx >= L) return false;
        std::vector<std::uint8_t> u(T);
        for (auto& bit : u) bit = rng.next_bit() ? 1 : 0;
        CodeBlock cb = chain.encode_block(u);
        const auto lu = transmit_bpsk_awgn(cb.u, sigma, rng);
        const auto l1 = transmit_bpsk_awgn(cb.v1, sigma, rng);
        const auto l2 = transmit_bpsk_awgn(cb.v2, sigma, rng);
        dec.push_block(lu, l1, l2);
        tx_bits[tx] = std::move(cb.u);
        ++tx;
        return true;
    };

    std::size_t decided = 0;
    while (decided < L) {
        const auto decisions = dec.decode_next(transmit_one);
        if (decisions.empty())
            throw std::logic_error("run_frame: decoder stalled before frame end");
        for (const auto& d : decisions) {
            const auto& truth = tx_bits.at(static_cast<std::size_t>(d.time));
            std::uint64_t errs = 0;
            for (std::size_t k = 0; k < T; ++k) errs += (d.bits[k] != truth[k]);
            fs.bit_errors += errs;
            fs.block_bit_errors[static_cast<std::size_t>(d.time)] += errs;
            if (errs) {
                ++fs.block_errors;
                fs.frame_error = true;
            }
            if (d.resync_triggered) ++fs.resync_events;
            // Usage stats cover regular targets: not flushed by a resync and
            // not decoded with a frame-tail window smaller than w.
            if (!d.flushed && d.used_window >= cfg.decoder.w) {
                fs.window_sum += std::uint64_t(d.used_window);
                ++fs.window_targets;
                fs.iter_sum += std::uint64_t(d.used_iterations);
                ++fs.iter_targets;
            }
            ++decided;
        }
        if (dec.resync_pending()) {
            chain.resync_reset();
            dec.acknowledge_resync();
        }
    }
    return fs;
}

namespace {

void merge_frame(PointStats& ps, const FrameStats& fs, const SimConfig& cfg) {
    ps.frames += 1;
    ps.blocks += cfg.chain_len;
    ps.bits += std::uint64_t(cfg.chain_len) * cfg.block_len;
    ps.bit_errors += fs.bit_errors;
    ps.block_errors += fs.block_errors;
    ps.frame_errors += fs.frame_error ? 1 : 0;
    ps.resync_events += fs.resync_events;
    ps.window_sum += fs.window_sum;
    ps.window_targets += fs.window_targets;
    ps.iter_sum += fs.iter_sum;
    ps.iter_targets += fs.iter_targets;
    for (std::size_t i = 0; i < fs.block_bit_errors.size(); ++i)
        ps.block_error_hist[i] += fs.block_bit_errors[i];
}

}  // namespace

PointStats run_point(const SimConfig& cfg, const PermutorSet& perms,
                     std::size_t point_index) {
    const double ebn0 = cfg.ebn0_db.at(point_index);
    PointStats ps;
    ps.ebn0_db = ebn0;
    ps.block_error_hist.assign(cfg.chain_len, 0);

    const bool use_targets = cfg.min_bit_errors > 0 || cfg.min_frame_errors > 0;
    const int threads = cfg.threads;
    // With error targets the point ends early, but only at batch boundaries:
    // every frame of a batch always runs, so the aggregate cannot depend on
    // thread scheduling.
    const std::uint64_t batch =
        use_targets ? std::max<std::uint64_t>(64, std::uint64_t(threads) * 16)
                    : cfg.frames;

    std::uint64_t next = 0;
    while (next < cfg.frames) {
        const std::uint64_t end = std::min(cfg.frames, next + batch);
        if (threads == 1) {
            for (std::uint64_t f = next; f < end; ++f)
                merge_frame(ps, run_frame(cfg, perms, ebn0, frame_seed(cfg.seed, point_index, f)),
                            cfg);
        } else {
            std::vector<PointStats> locals(static_cast<std::size_t>(threads));
            for (auto& l : locals) l.block_error_hist.assign(cfg.chain_len, 0);
            std::atomic<std::uint64_t> cursor{next};
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
            for (int t = 0; t < threads; ++t) {
                pool.emplace_back([&, t]() {
                    try {
                        for (;;) {
                            const std::uint64_t f = cursor.fetch_add(1);
                            if (f >= end) break;
                            merge_frame(locals[std::size_t(t)],
                                        run_frame(cfg, perms, ebn0,
                                                  frame_seed(cfg.seed, point_index, f)),
                                        cfg);
                        }
                    } catch (...) {
                        errors[std::size_t(t)] = std::current_exception();
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
            for (auto& l : locals) ps.merge(l);
        }
        next = end;
        if (use_targets) {
            const bool bits_ok = cfg.min_bit_errors == 0 || ps.bit_errors >= cfg.min_bit_errors;
            const bool frames_ok =
                cfg.min_frame_errors == 0 || ps.frame_errors >= cfg.min_frame_errors;
            if (bits_ok && frames_ok) break;
        }
    }
    return ps;
}

SweepResult run_sweep(const SimConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    SweepResult sweep;
    const PermutorSet perms = make_permutors(cfg);
    sweep.permutor_seeds = perms.seeds;
    for (std::size_t p = 0; p < cfg.ebn0_db.size(); ++p)
        sweep.points.push_back(run_point(cfg, perms, p));
    sweep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sweep;
}

std::string format_summary_csv(const SweepResult& sweep) {
    std::string out = "ebn0_db,ber,bler,fer,avg_window,avg_horizontal_iters,resync_count\n";
    char line[256];
    for (const auto& p : sweep.points) {
        std::snprintf(line, sizeof(line), "%.6g,%.10e,%.10e,%.10e,%.6f,%.6f,%llu\n",
                      p.ebn0_db, p.ber(), p.bler(), p.fer(), p.avg_window(),
                      p.avg_horizontal_iters(),
                      static_cast<unsigned long long>(p.resync_events));
        out += line;
    }
    return out;
}

void emit_reports(const SimConfig& cfg, const SweepResult& sweep) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);

    {
        std::ofstream f(fs::path(cfg.out_dir) / "summary.csv",
                        std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("emit_reports: cannot write summary.csv");
        f << format_summary_csv(sweep);
    }

    if (cfg.emit_block_histogram) {
        for (std::size_t p = 0; p < sweep.points.size(); ++p) {
            char name[64];
            std::snprintf(name, sizeof(name), "block_errors_p%zu.csv", p);
            std::ofstream f(fs::path(cfg.out_dir) / name,
                            std::ios::binary | std::ios::trunc);
            if (!f) throw std::runtime_error("emit_reports: cannot write block histogram");
            f << "block_index,bit_errors\n";
            const auto& hist = sweep.points[p].block_error_hist;
            for (std::size_t i = 0; i < hist.size(); ++i)
                f << i << ',' << hist[i] << '\n';
        }
    }

    // Machine-readable record of the exact run configuration. Deliberately
    // free of timing data so that reruns produce byte-identical files.
    nlohmann::json m;
    m["block_len"] = cfg.block_len;
    m["chain_len"] = cfg.chain_len;
    m["frames"] = cfg.frames;
    m["ebn0_db"] = cfg.ebn0_db;
    m["seed"] = cfg.seed;
    m["threads"] = cfg.threads;
    m["min_bit_errors"] = cfg.min_bit_errors;
    m["min_frame_errors"] = cfg.min_frame_errors;
    m["emit_block_histogram"] = cfg.emit_block_histogram;
    m["rate"] = kRate;
    m["decoder"] = {{"w", cfg.decoder.w},
                    {"w_max", cfg.decoder.w_max},
                    {"i1", cfg.decoder.i1},
                    {"i2", cfg.decoder.i2},
                    {"tau", cfg.decoder.tau},
                    {"theta", cfg.decoder.theta},
                    {"n_r", cfg.decoder.n_r},
                    {"gamma", cfg.decoder.gamma},
                    {"extension_enabled", cfg.decoder.extension_enabled},
                    {"resync_enabled", cfg.decoder.resync_enabled},
                    {"stopping_enabled", cfg.decoder.stopping_enabled}};
    m["permutor_seeds"] = sweep.permutor_seeds;
    m["kernel_avx512"] = bcjr_f32_uses_avx512();
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : sweep.points) {
        pts.push_back({{"ebn0_db", p.ebn0_db},
                       {"frames", p.frames},
                       {"bits", p.bits},
                       {"bit_errors", p.bit_errors},
                       {"blocks", p.blocks},
                       {"block_errors", p.block_errors},
                       {"frame_errors", p.frame_errors},
                       {"resync_count", p.resync_events},
                       {"avg_window", p.avg_window()},
                       {"avg_horizontal_iters", p.avg_horizontal_iters()}});
    }
    m["points"] = pts;
    std::ofstream f(fs::path(cfg.out_dir) / "manifest.json",
                    std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("emit_reports: cannot write manifest.json");
    f << m.dump(2) << '\n';
}

}  // namespace sbcc
