#include "sbcc/encoder_chain.hpp"

#include <stdexcept>

namespace sbcc {

EncoderChain::EncoderChain(std::size_t block_len, BlockPermutor p0,
                           BlockPermutor p1, BlockPermutor p2)
    : block_len_(block_len),
      trellis_(build_trellis()),
      p0_(std::move(p0)),
      p1_(std::move(p1)),
      p2_(std::move(p2)) {
    if (block_len_ == 0) throw std::invalid_argument("encoder: block_len must be > 0");
    if (p0_.size() != block_len_ || p1_.size() != block_len_ || p2_.size() != block_len_)
        throw std::invalid_argument("encoder: permutor length != block_len");
    fb1_.assign(block_len_, 0);
    fb2_.assign(block_len_, 0);
    scratch_.resize(block_len_);
}

CodeBlock EncoderChain::encode_block(std::span<const std::uint8_t> u) {
    if (u.size() != block_len_)
        throw std::invalid_argument("encoder: info length != block_len");

    CodeBlock out;
    out.u.assign(u.begin(), u.end());

    // Encoder 1: a = u, b = permuted previous v2.
    auto r1 = sbcc::encode_block(trellis_, s1_, u, fb1_);
    s1_ = r1.end_state;
    out.v1 = std::move(r1.parity);

    // Encoder 2: a = P0(u), b = permuted previous v1.
    p0_.apply_into(std::span<const std::uint8_t>(u), std::span<std::uint8_t>(scratch_));
    auto r2 = sbcc::encode_block(trellis_, s2_, scratch_, fb2_);
    s2_ = r2.end_state;
    out.v2 = std::move(r2.parity);

    // Feedback for the next block.
    p2_.apply_into(std::span<const std::uint8_t>(out.v2), std::span<std::uint8_t>(fb1_));
    p1_.apply_into(std::span<const std::uint8_t>(out.v1), std::span<std::uint8_t>(fb2_));

    ++blocks_encoded_;
    return out;
}

void EncoderChain::resync_reset() {
    s1_ = 0;
    s2_ = 0;
    std::fill(fb1_.begin(), fb1_.end(), std::uint8_t{0});
    std::fill(fb2_.begin(), fb2_.end(), std::uint8_t{0});
}

}  // namespace sbcc
