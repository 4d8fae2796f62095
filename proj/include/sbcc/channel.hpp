#ifndef SBCC_CHANNEL_HPP
#define SBCC_CHANNEL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sbcc/rng.hpp"

namespace sbcc {

// Noise standard deviation for BPSK over AWGN with unit symbol energy:
// sigma^2 = 1 / (2 * rate * 10^(EbN0_dB/10)).
double awgn_sigma(double ebn0_db, double rate);

// LLR of one observation y = bpsk(bit) + sigma*n under L = ln(P(0)/P(1)):
// 2*y/sigma^2, clamped to +/-kLlrMax.
double channel_llr(double y, double sigma);

// BPSK-modulates bits (0 -> +1, 1 -> -1), adds N(0, sigma^2) noise and
// returns the channel LLRs. One Gaussian draw per bit, in order.
std::vector<double> transmit_bpsk_awgn(std::span<const std::uint8_t> bits,
                                       double sigma, Xoshiro256pp& rng);

}  // namespace sbcc

#endif
