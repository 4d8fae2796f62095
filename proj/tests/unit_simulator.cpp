#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sbcc/simulator.hpp"

using namespace sbcc;
namespace fs = std::filesystem;

namespace {

SimConfig small_config() {
    SimConfig cfg;
    cfg.block_len = 32;
    cfg.chain_len = 5;
    cfg.frames = 9;
    cfg.ebn0_db = {1.0};
    cfg.seed = 42;
    cfg.threads = 1;
    cfg.decoder.i2 = 6;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool same_stats(const PointStats& a, const PointStats& b) {
    return a.frames == b.frames && a.blocks == b.blocks && a.bits == b.bits &&
           a.bit_errors == b.bit_errors && a.block_errors == b.block_errors &&
           a.frame_errors == b.frame_errors && a.resync_events == b.resync_events &&
           a.window_sum == b.window_sum && a.window_targets == b.window_targets &&
           a.iter_sum == b.iter_sum && a.iter_targets == b.iter_targets &&
           a.block_error_hist == b.block_error_hist;
}

}  // namespace

TEST_CASE("sim config validation") {
    SimConfig cfg = small_config();
    cfg.validate();
    cfg.threads = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.ebn0_db.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.frames = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("frame seeds differ per frame and per point, and are stable") {
    CHECK(frame_seed(1, 0, 0) == frame_seed(1, 0, 0));
    CHECK(frame_seed(1, 0, 0) != frame_seed(1, 0, 1));
    CHECK(frame_seed(1, 0, 5) != frame_seed(1, 1, 5));
    CHECK(frame_seed(1, 0, 5) != frame_seed(2, 0, 5));
}

TEST_CASE("experiment permutors are seed-determined and distinct") {
    const SimConfig cfg = small_config();
    const auto a = make_permutors(cfg);
    const auto b = make_permutors(cfg);
    CHECK(a.seeds == b.seeds);
    CHECK(a.p0.forward == b.p0.forward);
    CHECK(a.p1.forward == b.p1.forward);
    CHECK(a.p2.forward == b.p2.forward);
    CHECK(a.p0.size() == cfg.block_len);
    CHECK(a.p0.forward != a.p1.forward);
    CHECK(a.p1.forward != a.p2.forward);

    SimConfig other = cfg;
    other.seed = 43;
    const auto c = make_permutors(other);
    CHECK(a.p0.forward != c.p0.forward);
}

TEST_CASE("run_frame is deterministic and error-free at high SNR") {
    SimConfig cfg = small_config();
    const auto perms = make_permutors(cfg);
    const auto f1 = run_frame(cfg, perms, 6.0, frame_seed(cfg.seed, 0, 0));
    const auto f2 = run_frame(cfg, perms, 6.0, frame_seed(cfg.seed, 0, 0));
    CHECK(f1.bit_errors == f2.bit_errors);
    CHECK(f1.block_bit_errors == f2.block_bit_errors);
    CHECK(f1.window_sum == f2.window_sum);
    CHECK(f1.iter_sum == f2.iter_sum);
    CHECK(f1.bit_errors == 0);
    CHECK(f1.block_errors == 0);
    CHECK(!f1.frame_error);
    CHECK(f1.block_bit_errors.size() == cfg.chain_len);
}

TEST_CASE("run_frame error bookkeeping is internally consistent") {
    SimConfig cfg = small_config();
    cfg.decoder.resync_enabled = false;  // keep every block a plain decision
    const auto perms = make_permutors(cfg);
    // far below the waterfall: errors are essentially certain
    const auto f = run_frame(cfg, perms, -4.0, frame_seed(cfg.seed, 0, 1));
    const auto hist_sum = std::accumulate(f.block_bit_errors.begin(),
                                          f.block_bit_errors.end(), std::uint64_t(0));
    CHECK(f.bit_errors == hist_sum);
    CHECK(f.bit_errors > 0);
    CHECK(f.block_errors > 0);
    CHECK(f.frame_error);
    CHECK(f.block_errors <= cfg.chain_len);
}

TEST_CASE("run_point aggregates identically for any thread count") {
    SimConfig cfg = small_config();
    cfg.ebn0_db = {0.0};  // noisy enough that errors occur
    const auto perms = make_permutors(cfg);
    cfg.threads = 1;
    const auto serial = run_point(cfg, perms, 0);
    cfg.threads = 3;
    const auto parallel = run_point(cfg, perms, 0);
    CHECK(same_stats(serial, parallel));
    CHECK(serial.frames == cfg.frames);
    CHECK(serial.bits == std::uint64_t(cfg.frames) * cfg.chain_len * cfg.block_len);
}

TEST_CASE("error-target mode stops at a batch boundary, deterministically") {
    SimConfig cfg = small_config();
    cfg.frames = 500;
    cfg.ebn0_db = {-5.0};
    cfg.min_bit_errors = 1;
    const auto perms = make_permutors(cfg);
    const auto a = run_point(cfg, perms, 0);
    const auto b = run_point(cfg, perms, 0);
    CHECK(same_stats(a, b));
    CHECK(a.bit_errors >= cfg.min_bit_errors);
    CHECK(a.frames == 64);  // first batch suffices at this SNR
}

TEST_CASE("summary formatting: header and one line per point") {
    SweepResult sweep;
    PointStats p;
    p.ebn0_db = 1.5;
    p.frames = 2;
    p.blocks = 10;
    p.bits = 320;
    p.bit_errors = 16;
    p.block_errors = 5;
    p.frame_errors = 1;
    p.resync_events = 3;
    p.window_sum = 24;
    p.window_targets = 8;
    p.iter_sum = 40;
    p.iter_targets = 8;
    sweep.points.push_back(p);
    const auto csv = format_summary_csv(sweep);
    std::istringstream ss(csv);
    std::string header, line, rest;
    std::getline(ss, header);
    std::getline(ss, line);
    CHECK(header == "ebn0_db,ber,bler,fer,avg_window,avg_horizontal_iters,resync_count");
    CHECK(line == "1.5,5.0000000000e-02,5.0000000000e-01,5.0000000000e-01,3.000000,5.000000,3");
    CHECK(!std::getline(ss, rest));
}

TEST_CASE("reports are byte-identical across reruns and thread counts") {
    SimConfig cfg = small_config();
    cfg.frames = 6;
    cfg.ebn0_db = {0.0, 4.0};
    cfg.emit_block_histogram = true;

    const fs::path base = fs::temp_directory_path() / "sbcc_unit_reports";
    fs::remove_all(base);

    cfg.out_dir = (base / "a").string();
    const auto s1 = run_sweep(cfg);
    emit_reports(cfg, s1);

    cfg.out_dir = (base / "b").string();
    cfg.threads = 4;
    const auto s2 = run_sweep(cfg);
    emit_reports(cfg, s2);

    // threads is recorded in the manifest, so compare data files only
    CHECK(slurp(base / "a" / "summary.csv") == slurp(base / "b" / "summary.csv"));
    CHECK(slurp(base / "a" / "block_errors_p0.csv") ==
          slurp(base / "b" / "block_errors_p0.csv"));
    CHECK(slurp(base / "a" / "block_errors_p1.csv") ==
          slurp(base / "b" / "block_errors_p1.csv"));

    // identical rerun including the manifest (no timing inside)
    cfg.threads = 4;
    const auto s3 = run_sweep(cfg);
    cfg.out_dir = (base / "c").string();
    emit_reports(cfg, s3);
    CHECK(slurp(base / "b" / "summary.csv") == slurp(base / "c" / "summary.csv"));
    CHECK(slurp(base / "b" / "manifest.json") == slurp(base / "c" / "manifest.json"));

    const auto m = nlohmann::json::parse(slurp(base / "c" / "manifest.json"));
    CHECK(m.at("block_len") == cfg.block_len);
    CHECK(m.at("seed") == cfg.seed);
    CHECK(m.at("points").size() == 2);
    CHECK(m.at("permutor_seeds").size() == 3);
    CHECK(m.at("decoder").at("w") == cfg.decoder.w);

    const auto csv = slurp(base / "a" / "summary.csv");
    CHECK(csv.rfind("ebn0_db,ber,bler,fer,avg_window,avg_horizontal_iters,resync_count\n",
                    0) == 0);

    fs::remove_all(base);
}
