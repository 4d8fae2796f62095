#ifndef SBCC_SIMULATOR_HPP
#define SBCC_SIMULATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sbcc/encoder_chain.hpp"
#include "sbcc/window_decoder.hpp"

namespace sbcc {

struct SimConfig {
    std::size_t block_len = 512;   // T, info bits per block
    std::size_t chain_len = 50;    // L, blocks per frame
    std::uint64_t frames = 2000;   // frames per Eb/N0 point (cap in target mode)
    std::vector<double> ebn0_db = {0.5, 1.0, 1.5};
    std::uint64_t seed = 1;
    int threads = 1;
    DecoderConfig decoder;
    std::string out_dir = "out";
    bool emit_block_histogram = false;
    // Optional early stop per point: once every nonzero target below is met
    // (checked between deterministic batches), the point ends early.
    std::uint64_t min_bit_errors = 0;
    std::uint64_t min_frame_errors = 0;

    void validate() const;
};

struct PointStats {
    double ebn0_db = 0.0;
    std::uint64_t frames = 0, blocks = 0, bits = 0;
    std::uint64_t bit_errors = 0, block_errors = 0, frame_errors = 0;
    std::uint64_t resync_events = 0;
    // Window/iteration usage over regular targets (excludes stream-tail
    // targets whose window was shrunk by frame end, and flushed blocks).
    std::uint64_t window_sum = 0, window_targets = 0;
    std::uint64_t iter_sum = 0, iter_targets = 0;
    std::vector<std::uint64_t> block_error_hist;  // bit errors per block index

    double ber() const { return bits ? double(bit_errors) / double(bits) : 0.0; }
    double bler() const { return blocks ? double(block_errors) / double(blocks) : 0.0; }
    double fer() const { return frames ? double(frame_errors) / double(frames) : 0.0; }
    double avg_window() const {
        return window_targets ? double(window_sum) / double(window_targets) : 0.0;
    }
    double avg_horizontal_iters() const {
        return iter_targets ? double(iter_sum) / double(iter_targets) : 0.0;
    }

    void merge(const PointStats& other);
};

struct FrameStats {
    std::uint64_t bit_errors = 0, block_errors = 0;
    bool frame_error = false;
    std::uint64_t resync_events = 0;
    std::uint64_t window_sum = 0, window_targets = 0;
    std::uint64_t iter_sum = 0, iter_targets = 0;
    std::vector<std::uint64_t> block_bit_errors;  // length L
};

struct SweepResult {
    std::vector<PointStats> points;
    std::vector<std::uint64_t> permutor_seeds;  // P0, P1, P2
    double elapsed_seconds = 0.0;
};

// Experiment-level permutors: fixed by the master seed, shared by all points.
struct PermutorSet {
    BlockPermutor p0, p1, p2;
    std::vector<std::uint64_t> seeds;
};
PermutorSet make_permutors(const SimConfig& cfg);

// Deterministic per-frame seed; the frame's info bits and noise depend only
// on (master seed, point index, frame index).
std::uint64_t frame_seed(std::uint64_t master, std::size_t point_index,
                         std::uint64_t frame_index);

// Encodes, transmits and decodes one frame of L blocks.
FrameStats run_frame(const SimConfig& cfg, const PermutorSet& perms,
                     double ebn0_db, std::uint64_t seed);

// Runs one Eb/N0 point, optionally multi-threaded. Aggregation is a sum of
// integer counters, so the result is identical for any thread count.
PointStats run_point(const SimConfig& cfg, const PermutorSet& perms,
                     std::size_t point_index);

SweepResult run_sweep(const SimConfig& cfg);

// Writes summary.csv (+ per-point block histograms if enabled) and
// manifest.json into cfg.out_dir. Re-emission overwrites idempotently.
void emit_reports(const SimConfig& cfg, const SweepResult& sweep);

// Formats the summary table; emit_reports writes exactly this string.
std::string format_summary_csv(const SweepResult& sweep);

}  // namespace sbcc

#endif
