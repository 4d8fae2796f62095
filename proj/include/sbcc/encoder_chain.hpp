#ifndef SBCC_ENCODER_CHAIN_HPP
#define SBCC_ENCODER_CHAIN_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sbcc/permutor.hpp"
#include "sbcc/rsc.hpp"

namespace sbcc {

// One rate-1/3 code block: T info bits and the two component parity streams.
struct CodeBlock {
    std::vector<std::uint8_t> u, v1, v2;
};

// Streaming encoder built from two cross-coupled rate-2/3 RSC components.
// Per block t:
//   encoder 1: a = u_t,     b = P2(v2 of block t-1)  -> v1_t
//   encoder 2: a = P0(u_t), b = P1(v1 of block t-1)  -> v2_t
// The parity feedback gives the braid its one-block memory; block 0 (and the
// first block after resync_reset) sees all-zero feedback and zero states.
class EncoderChain {
  public:
    EncoderChain(std::size_t block_len, BlockPermutor p0, BlockPermutor p1,
                 BlockPermutor p2);

    CodeBlock encode_block(std::span<const std::uint8_t> u);

    // Drops all state: both component encoders return to state 0 and the
    // feedback buffers are cleared, as if the stream restarted.
    void resync_reset();

    std::size_t block_len() const { return block_len_; }
    ComponentState state1() const { return s1_; }
    ComponentState state2() const { return s2_; }
    std::int64_t blocks_encoded() const { return blocks_encoded_; }

    const BlockPermutor& p0() const { return p0_; }
    const BlockPermutor& p1() const { return p1_; }
    const BlockPermutor& p2() const { return p2_; }

  private:
    std::size_t block_len_;
    TrellisTable trellis_;
    BlockPermutor p0_, p1_, p2_;
    ComponentState s1_ = 0, s2_ = 0;
    std::vector<std::uint8_t> fb1_;  // P2(previous v2), b input of encoder 1
    std::vector<std::uint8_t> fb2_;  // P1(previous v1), b input of encoder 2
    std::vector<std::uint8_t> scratch_;
    std::int64_t blocks_encoded_ = 0;
};

}  // namespace sbcc

#endif
