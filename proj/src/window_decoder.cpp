#include "sbcc/window_decoder.hpp"

#include <cassert>
#include <cmath>

#include "sbcc/llr.hpp"

namespace sbcc {

void DecoderConfig::validate() const {
    if (w < 1) throw std::invalid_argument("decoder: w must be >= 1");
    if (w_max < w) throw std::invalid_argument("decoder: w_max must be >= w");
    if (i1 < 1 || i2 < 1) throw std::invalid_argument("decoder: I1 and I2 must be >= 1");
    if (tau < 1 || tau > w) throw std::invalid_argument("decoder: tau must be in [1, w]");
    if (n_r < 1) throw std::invalid_argument("decoder: N_r must be >= 1");
    if (theta < 0.0) throw std::invalid_argument("decoder: theta must be >= 0");
    if (!(gamma >= 0.0 && gamma <= 0.5))
        throw std::invalid_argument("decoder: gamma must be in [0, 0.5]");
}

void LlrBank::reset_iteration_state() {
    std::fill(ext_a1.begin(), ext_a1.end(), 0.0f);
    std::fill(ext_b1.begin(), ext_b1.end(), 0.0f);
    std::fill(ext_p1.begin(), ext_p1.end(), 0.0f);
    std::fill(ext_a2.begin(), ext_a2.end(), 0.0f);
    std::fill(ext_b2.begin(), ext_b2.end(), 0.0f);
    std::fill(ext_p2.begin(), ext_p2.end(), 0.0f);
    alpha1.fill(0.0f);
    alpha2.fill(0.0f);
    beta1.fill(0.0f);
    beta2.fill(0.0f);
}

double avg_abs_llr(std::span<const float> llrs) {
    if (llrs.empty()) return 0.0;
    double s = 0.0;
    for (float v : llrs) s += std::fabs(double(v));
    return s / double(llrs.size());
}

double avg_abs_llr(std::span<const double> llrs) {
    if (llrs.empty()) return 0.0;
    double s = 0.0;
    for (double v : llrs) s += std::fabs(v);
    return s / double(llrs.size());
}

double ber_est(std::span<const float> llrs) {
    if (llrs.empty()) return 0.0;
    double s = 0.0;
    for (float v : llrs) s += 1.0 / (1.0 + std::exp(std::fabs(double(v))));
    return s / double(llrs.size());
}

double ber_est(std::span<const double> llrs) {
    if (llrs.empty()) return 0.0;
    double s = 0.0;
    for (double v : llrs) s += 1.0 / (1.0 + std::exp(std::fabs(v)));
    return s / double(llrs.size());
}

WindowDecoder::WindowDecoder(const DecoderConfig& cfg, std::size_t block_len,
                             BlockPermutor p0, BlockPermutor p1, BlockPermutor p2)
    : cfg_(cfg),
      block_len_(block_len),
      trellis_(build_trellis()),
      p0_(std::move(p0)),
      p1_(std::move(p1)),
      p2_(std::move(p2)),
      w_cur_(cfg.w) {
    cfg_.validate();
    if (block_len_ == 0) throw std::invalid_argument("decoder: block_len must be > 0");
    if (p0_.size() != block_len_ || p1_.size() != block_len_ || p2_.size() != block_len_)
        throw std::invalid_argument("decoder: permutor length != block_len");
    bnd_b1_.resize(block_len_);
    bnd_b2_.resize(block_len_);
    in_a_.resize(block_len_);
    in_b_.resize(block_len_);
    in_p_.resize(block_len_);
    tmp_.resize(block_len_);
    set_boundary_chain_start();
}

void WindowDecoder::set_boundary_chain_start() {
    // Component encoders start in state 0 with all-zero parity feedback, so
    // the first block sees point-mass forward metrics and +max b-port priors.
    bnd_alpha1_ = {0.0f, kLogZeroF, kLogZeroF, kLogZeroF};
    bnd_alpha2_ = bnd_alpha1_;
    std::fill(bnd_b1_.begin(), bnd_b1_.end(), float(kLlrMax));
    std::fill(bnd_b2_.begin(), bnd_b2_.end(), float(kLlrMax));
}

void WindowDecoder::set_boundary_uniform() {
    bnd_alpha1_.fill(0.0f);
    bnd_alpha2_.fill(0.0f);
    std::fill(bnd_b1_.begin(), bnd_b1_.end(), 0.0f);
    std::fill(bnd_b2_.begin(), bnd_b2_.end(), 0.0f);
}

void WindowDecoder::set_boundary(const std::array<float, 4>& alpha1,
                                 const std::array<float, 4>& alpha2,
                                 std::vector<float> b1_prior,
                                 std::vector<float> b2_prior) {
    if (b1_prior.size() != block_len_ || b2_prior.size() != block_len_)
        throw std::invalid_argument("decoder: boundary prior length != block_len");
    bnd_alpha1_ = alpha1;
    bnd_alpha2_ = alpha2;
    bnd_b1_ = std::move(b1_prior);
    bnd_b2_ = std::move(b2_prior);
}

void WindowDecoder::push_block(std::span<const double> ch_u,
                               std::span<const double> ch_v1,
                               std::span<const double> ch_v2) {
    if (ch_u.size() != block_len_ || ch_v1.size() != block_len_ ||
        ch_v2.size() != block_len_)
        throw std::invalid_argument("decoder: block length mismatch");
    LlrBank b;
    b.time = next_rx_time_++;
    auto cvt = [this](std::span<const double> src, std::vector<float>& dst) {
        dst.resize(block_len_);
        for (std::size_t k = 0; k < src.size(); ++k)
            dst[k] = clamp_llr_f(float(src[k]));
    };
    cvt(ch_u, b.ch_u);
    cvt(ch_v1, b.ch_v1);
    cvt(ch_v2, b.ch_v2);
    b.ext_a1.assign(block_len_, 0.0f);
    b.ext_b1.assign(block_len_, 0.0f);
    b.ext_p1.assign(block_len_, 0.0f);
    b.ext_a2.assign(block_len_, 0.0f);
    b.ext_b2.assign(block_len_, 0.0f);
    b.ext_p2.assign(block_len_, 0.0f);
    window_.push_back(std::move(b));
    stream_ended_ = false;
}

void WindowDecoder::assemble_and_run(int window_idx, int component, bool want_ext_b,
                                     bool want_ext_p) {
    const std::size_t T = block_len_;
    const int last = w_cur_ - 1;
    LlrBank& B = window_[window_idx];
    const LlrBank* left = window_idx > 0 ? &window_[window_idx - 1] : nullptr;
    const LlrBank* right = window_idx < last ? &window_[window_idx + 1] : nullptr;

    const float* pa = in_a_.data();
    const float* pb = in_b_.data();
    const float* pp = in_p_.data();
    const float* a_init = nullptr;
    const float* b_init = nullptr;
    static constexpr float kUniform[4] = {0.0f, 0.0f, 0.0f, 0.0f};

    if (component == 1) {
        // a-port: systematic channel + deinterleaved info extrinsic of dec 2.
        p0_.apply_inverse_into(std::span<const float>(B.ext_a2),
                               std::span<float>(tmp_));
        for (std::size_t k = 0; k < T; ++k)
            in_a_[k] = clamp_llr_f(B.ch_u[k] + tmp_[k]);
        // b-port: permuted previous-block v2 stream (channel + parity ext).
        if (!left) {
            pb = bnd_b1_.data();
        } else {
            for (std::size_t k = 0; k < T; ++k)
                tmp_[k] = clamp_llr_f(left->ch_v2[k] + left->ext_p2[k]);
            p2_.apply_into(std::span<const float>(tmp_), std::span<float>(in_b_));
        }
        // p-port: own v1 channel + feedback prior from the right neighbour.
        if (!right) {
            pp = B.ch_v1.data();
        } else {
            p1_.apply_inverse_into(std::span<const float>(right->ext_b2),
                                   std::span<float>(tmp_));
            for (std::size_t k = 0; k < T; ++k)
                in_p_[k] = clamp_llr_f(B.ch_v1[k] + tmp_[k]);
        }
        a_init = left ? left->alpha1.data() : bnd_alpha1_.data();
        b_init = right ? right->beta1.data() : kUniform;
        bcjr_block_f32(trellis_, pa, pb, pp, T, a_init, b_init, B.ext_a1.data(),
                       want_ext_b ? B.ext_b1.data() : nullptr,
                       want_ext_p ? B.ext_p1.data() : nullptr, B.alpha1.data(),
                       B.beta1.data(), scratch_);
    } else {
        // a-port: interleaved systematic + info extrinsic of dec 1.
        for (std::size_t k = 0; k < T; ++k)
            tmp_[k] = clamp_llr_f(B.ch_u[k] + B.ext_a1[k]);
        p0_.apply_into(std::span<const float>(tmp_), std::span<float>(in_a_));
        // b-port: permuted previous-block v1 stream.
        if (!left) {
            pb = bnd_b2_.data();
        } else {
            for (std::size_t k = 0; k < T; ++k)
                tmp_[k] = clamp_llr_f(left->ch_v1[k] + left->ext_p1[k]);
            p1_.apply_into(std::span<const float>(tmp_), std::span<float>(in_b_));
        }
        // p-port: own v2 channel + feedback prior from the right neighbour.
        if (!right) {
            pp = B.ch_v2.data();
        } else {
            p2_.apply_inverse_into(std::span<const float>(right->ext_b1),
                                   std::span<float>(tmp_));
            for (std::size_t k = 0; k < T; ++k)
                in_p_[k] = clamp_llr_f(B.ch_v2[k] + tmp_[k]);
        }
        a_init = left ? left->alpha2.data() : bnd_alpha2_.data();
        b_init = right ? right->beta2.data() : kUniform;
        bcjr_block_f32(trellis_, pa, pb, pp, T, a_init, b_init, B.ext_a2.data(),
                       want_ext_b ? B.ext_b2.data() : nullptr,
                       want_ext_p ? B.ext_p2.data() : nullptr, B.alpha2.data(),
                       B.beta2.data(), scratch_);
    }
}

void WindowDecoder::run_vertical_iteration(int window_idx) {
    for (int r = 0; r < cfg_.i1; ++r) {
        assemble_and_run(window_idx, 1, true, true);
        assemble_and_run(window_idx, 2, true, true);
    }
}

void WindowDecoder::run_horizontal_iteration() {
    // The buffer may hold lookahead beyond the active window.
    assert(int(window_.size()) >= w_cur_);
    // Forward sweep: ext_b of a block is re-derived in the backward sweep
    // before anyone reads it, so it is skipped here; likewise ext_p is
    // skipped on the backward sweep except for the target block, whose final
    // parity extrinsics seed the next window boundary.
    for (int i = 0; i < w_cur_; ++i)
        for (int r = 0; r < cfg_.i1; ++r) {
            assemble_and_run(i, 1, false, true);
            assemble_and_run(i, 2, false, true);
        }
    for (int i = w_cur_ - 1; i >= 0; --i)
        for (int r = 0; r < cfg_.i1; ++r) {
            assemble_and_run(i, 1, true, i == 0);
            assemble_and_run(i, 2, true, i == 0);
        }
}

void WindowDecoder::decision_llrs(std::size_t window_idx, std::vector<float>& out) {
    const LlrBank& B = window_.at(window_idx);
    out.resize(block_len_);
    p0_.apply_inverse_into(std::span<const float>(B.ext_a2), std::span<float>(tmp_));
    for (std::size_t k = 0; k < block_len_; ++k)
        out[k] = clamp_llr_f(B.ch_u[k] + B.ext_a1[k] + tmp_[k]);
}

void WindowDecoder::restart_iteration_state() {
    for (auto& b : window_) b.reset_iteration_state();
}

BlockDecision WindowDecoder::decide_block(std::size_t window_idx, bool flushed) {
    BlockDecision d;
    decision_llrs(window_idx, dec_llr_);
    d.time = window_[window_idx].time;
    d.bits.resize(block_len_);
    for (std::size_t k = 0; k < block_len_; ++k)
        d.bits[k] = dec_llr_[k] < 0.0f ? 1 : 0;
    d.avg_abs_llr = avg_abs_llr(std::span<const float>(dec_llr_));
    d.ber_est = ber_est(std::span<const float>(dec_llr_));
    d.flushed = flushed;
    return d;
}

void WindowDecoder::shift_after_decision() {
    LlrBank& tgt = window_.front();
    // The decided block becomes the left boundary: forward metrics of each
    // component plus the b-port totals its parity streams feed forward.
    bnd_alpha1_ = tgt.alpha1;
    bnd_alpha2_ = tgt.alpha2;
    for (std::size_t k = 0; k < block_len_; ++k)
        tmp_[k] = clamp_llr_f(tgt.ch_v2[k] + tgt.ext_p2[k]);
    p2_.apply_into(std::span<const float>(tmp_), std::span<float>(bnd_b1_));
    for (std::size_t k = 0; k < block_len_; ++k)
        tmp_[k] = clamp_llr_f(tgt.ch_v1[k] + tgt.ext_p1[k]);
    p1_.apply_into(std::span<const float>(tmp_), std::span<float>(bnd_b2_));
    window_.pop_front();
    w_cur_ = cfg_.w;
}

void WindowDecoder::flush_window(std::vector<BlockDecision>& out) {
    for (std::size_t j = 1; j < window_.size(); ++j)
        out.push_back(decide_block(j, true));
    window_.clear();
}

std::vector<BlockDecision> WindowDecoder::decode_next(const RequestBlock& request_block) {
    // Fill the window; the stream may run dry (frame tail), which shrinks it.
    while (int(window_.size()) < w_cur_ && !stream_ended_) {
        if (!request_block || !request_block()) stream_ended_ = true;
    }
    if (window_.empty()) return {};
    if (int(window_.size()) < w_cur_) w_cur_ = int(window_.size());

    restart_iteration_state();
    int i_count = 0;
    for (;;) {
        run_horizontal_iteration();
        ++i_count;
        if (cfg_.stopping_enabled) {
            decision_llrs(0, dec_llr_);
            if (ber_est(std::span<const float>(dec_llr_)) <= cfg_.gamma) break;
        }
        if (i_count < cfg_.i2) continue;
        // Iteration budget exhausted: try to extend the window if any of the
        // tau leading blocks still looks unreliable.
        if (!cfg_.extension_enabled || w_cur_ >= cfg_.w_max) break;
        bool weak = false;
        const int lead = std::min<int>(cfg_.tau, w_cur_);
        for (int j = 0; j < lead && !weak; ++j) {
            decision_llrs(std::size_t(j), dec_llr_);
            weak = avg_abs_llr(std::span<const float>(dec_llr_)) < cfg_.theta;
        }
        if (!weak) break;
        // Consume buffered lookahead first (left over when a previous target
        // finished with an extended window); only then pull a new block.
        if (int(window_.size()) == w_cur_) {
            if (stream_ended_ || !request_block || !request_block()) {
                stream_ended_ = true;
                break;
            }
            if (int(window_.size()) != w_cur_ + 1)
                throw std::logic_error("decoder: request_block must push exactly one block");
        }
        ++w_cur_;
        restart_iteration_state();
        i_count = 0;
    }

    BlockDecision d = decide_block(0, false);
    d.used_window = w_cur_;
    d.used_iterations = i_count;

    std::vector<BlockDecision> out;
    const bool failed = d.avg_abs_llr < cfg_.theta;
    if (cfg_.resync_enabled && failed && ++fail_count_ >= cfg_.n_r) {
        d.resync_triggered = true;
        out.push_back(std::move(d));
        flush_window(out);
        fail_count_ = 0;
        resync_pending_ = true;
        w_cur_ = cfg_.w;
        set_boundary_chain_start();
        return out;
    }
    if (cfg_.resync_enabled && !failed) fail_count_ = 0;
    out.push_back(std::move(d));
    shift_after_decision();
    return out;
}

}  // namespace sbcc
