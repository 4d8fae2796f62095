#ifndef SBCC_WINDOW_DECODER_HPP
#define SBCC_WINDOW_DECODER_HPP

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sbcc/permutor.hpp"
#include "sbcc/rsc.hpp"

namespace sbcc {

struct DecoderConfig {
    int w = 3;       // base window size in blocks
    int w_max = 6;   // extension cap
    int i1 = 1;      // vertical (per-block) exchange rounds
    int i2 = 20;     // horizontal iterations per target position
    int tau = 2;     // leading blocks checked by the extension rule
    double theta = 10.0;  // mean-|LLR| reliability threshold
    int n_r = 1;          // consecutive failed targets that trigger resync
    double gamma = 1e-7;  // estimated-BER stopping threshold

    bool extension_enabled = true;
    bool resync_enabled = true;
    bool stopping_enabled = true;

    void validate() const;
};

// Per-block decoder state: channel LLRs (fixed for the block's lifetime),
// the six extrinsic streams, and the boundary metrics of the last BCJR pass
// of each component decoder.
struct LlrBank {
    std::int64_t time = -1;
    std::vector<float> ch_u, ch_v1, ch_v2;
    std::vector<float> ext_a1, ext_b1, ext_p1;
    std::vector<float> ext_a2, ext_b2, ext_p2;
    std::array<float, 4> alpha1{}, alpha2{};  // forward metrics at block end
    std::array<float, 4> beta1{}, beta2{};    // backward metrics at block start

    void reset_iteration_state();
};

struct BlockDecision {
    std::int64_t time = -1;
    std::vector<std::uint8_t> bits;
    double avg_abs_llr = 0.0;  // mean |decision LLR| over the block
    double ber_est = 0.0;      // soft bit-error estimate at decision time
    int used_window = 0;
    int used_iterations = 0;
    bool resync_triggered = false;  // this target failed and caused a resync
    bool flushed = false;           // hard-decided while flushing the window
};

// Mean absolute value of a decision-LLR vector (the reliability statistic).
double avg_abs_llr(std::span<const float> llrs);
double avg_abs_llr(std::span<const double> llrs);

// Soft BER estimate: mean over bits of P(bit wrong) = 1/(1 + e^|L|).
double ber_est(std::span<const float> llrs);
double ber_est(std::span<const double> llrs);

// Sliding window decoder for the braided chain. Decodes one target block per
// decode_next() call using w_cur buffered blocks, with optional window
// extension, encoder/decoder resynchronization and soft early stopping.
class WindowDecoder {
  public:
    // Returns true when one more received block was supplied via push_block.
    using RequestBlock = std::function<bool()>;

    WindowDecoder(const DecoderConfig& cfg, std::size_t block_len,
                  BlockPermutor p0, BlockPermutor p1, BlockPermutor p2);

    // Supplies one received block (channel LLRs, natural order). Blocks must
    // arrive in stream order.
    void push_block(std::span<const double> ch_u, std::span<const double> ch_v1,
                    std::span<const double> ch_v2);

    // Decodes the next target. request_block is invoked whenever the decoder
    // wants one more received block (initial fill or window extension); it
    // returns false once the stream is exhausted. The returned vector holds
    // the target decision, plus the flushed remainder of the window if this
    // target triggered a resynchronization. Empty once everything buffered
    // has been decided.
    std::vector<BlockDecision> decode_next(const RequestBlock& request_block);

    // True if a resync fired in the decode_next call that produced the last
    // decisions; the encoder must resync_reset() before transmitting more.
    bool resync_pending() const { return resync_pending_; }
    void acknowledge_resync() { resync_pending_ = false; }

    std::size_t buffered() const { return window_.size(); }
    int w_cur() const { return w_cur_; }
    int fail_count() const { return fail_count_; }

    // Left-edge boundary injection (also used internally at chain start and
    // after resync): alphas are per-component forward metrics entering the
    // window, b-priors are total b-port LLRs for the first window block.
    void set_boundary_chain_start();
    void set_boundary_uniform();
    void set_boundary(const std::array<float, 4>& alpha1,
                      const std::array<float, 4>& alpha2,
                      std::vector<float> b1_prior, std::vector<float> b2_prior);

    // Exposed schedule pieces (decode_next drives these; tests may too).
    void run_vertical_iteration(int window_idx);
    void run_horizontal_iteration();

    const LlrBank& bank(std::size_t window_idx) const { return window_.at(window_idx); }
    LlrBank& bank_mut(std::size_t window_idx) { return window_.at(window_idx); }

    // Decision LLRs of a window block with current extrinsics.
    void decision_llrs(std::size_t window_idx, std::vector<float>& out);

    const DecoderConfig& config() const { return cfg_; }
    std::size_t block_len() const { return block_len_; }

  private:
    void assemble_and_run(int window_idx, int component, bool want_ext_b,
                          bool want_ext_p);
    void restart_iteration_state();
    BlockDecision decide_block(std::size_t window_idx, bool flushed);
    void shift_after_decision();
    void flush_window(std::vector<BlockDecision>& out);

    DecoderConfig cfg_;
    std::size_t block_len_;
    TrellisTable trellis_;
    BlockPermutor p0_, p1_, p2_;

    std::deque<LlrBank> window_;
    int w_cur_;
    int fail_count_ = 0;
    bool resync_pending_ = false;
    bool stream_ended_ = false;
    std::int64_t next_rx_time_ = 0;

    // Left boundary: forward metrics and total b-port priors for window[0].
    std::array<float, 4> bnd_alpha1_{}, bnd_alpha2_{};
    std::vector<float> bnd_b1_, bnd_b2_;

    // Scratch reused across BCJR calls.
    std::vector<float> in_a_, in_b_, in_p_, tmp_, dec_llr_;
    BcjrScratchF scratch_;
};

}  // namespace sbcc

#endif
