#ifndef SBCC_RSC_HPP
#define SBCC_RSC_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sbcc/llr.hpp"

namespace sbcc {

// Two-input recursive systematic convolutional component code, rate 2/3:
//   G(D) = [ 1  0  1/(1+D+D^2) ; 0  1  (1+D^2)/(1+D+D^2) ]
// realized in observer-canonical form with registers (r1, r2):
//   p    = a ^ b ^ r1
//   r1'  = r2 ^ p
//   r2'  = b ^ p
// State packing: s = 2*r1 + r2, so s = 0 is the all-zero register state.
using ComponentState = std::uint8_t;

inline constexpr int kNumStates = 4;

// Branch id = state*4 + (a*2 + b); 16 branches per trellis step.
struct TrellisTable {
    std::array<std::uint8_t, 16> next;    // successor state of each branch
    std::array<std::uint8_t, 16> parity;  // parity bit emitted on each branch
    // incoming[s] lists the 4 branch ids that terminate in state s.
    std::array<std::array<std::uint8_t, 4>, 4> incoming;
};

TrellisTable build_trellis();

struct EncodeResult {
    std::vector<std::uint8_t> parity;
    ComponentState end_state;
};

// Runs the component encoder over one block; a and b must have equal length.
EncodeResult encode_block(const TrellisTable& trellis, ComponentState start,
                          std::span<const std::uint8_t> a,
                          std::span<const std::uint8_t> b);

// Log-domain state metrics. uniform = no knowledge, point mass = known state.
using StateMetrics = std::array<double, 4>;

inline StateMetrics uniform_metrics() { return {0.0, 0.0, 0.0, 0.0}; }

inline StateMetrics point_mass_metrics(ComponentState s) {
    StateMetrics m{kLogZero, kLogZero, kLogZero, kLogZero};
    m[s] = 0.0;
    return m;
}

struct BcjrResult {
    std::vector<double> ext_a, ext_b, ext_p;  // extrinsic LLRs per port
    StateMetrics alpha_out;  // forward metrics after the last step, max-normalized
    StateMetrics beta_in;    // backward metrics at the first step, max-normalized
};

// Exact log-MAP BCJR over one block. Inputs are total port LLRs
// (channel + prior); outputs are extrinsic (input term subtracted).
// Double precision reference path; the window decoder uses the f32 kernel.
BcjrResult bcjr_block(const TrellisTable& trellis, std::span<const double> in_a,
                      std::span<const double> in_b, std::span<const double> in_p,
                      const StateMetrics& alpha_init, const StateMetrics& beta_init);

// ---- single-precision fast kernel ------------------------------------------

inline constexpr float kLogZeroF = -1e30f;

struct BcjrScratchF {
    std::vector<float> alpha;  // (T+1) * 4 forward metrics
    std::vector<float> gm;     // T * 8 branch-input metrics, index = (a2+b)*2+p
    void resize(std::size_t block_len) {
        alpha.resize((block_len + 1) * 4);
        gm.resize(block_len * 8);
    }
};

// Same computation as bcjr_block in batched single precision with a
// polynomial max* correction (abs error ~1e-4, below the f32 path's own
// accumulated rounding noise at decoder scale).
// ext_b / ext_p may be null when a sweep direction does not consume them.
void bcjr_block_f32(const TrellisTable& trellis, const float* in_a,
                    const float* in_b, const float* in_p, std::size_t block_len,
                    const float alpha_init[4], const float beta_init[4],
                    float* ext_a, float* ext_b, float* ext_p, float alpha_out[4],
                    float beta_in[4], BcjrScratchF& scratch);

// True when the f32 kernel was compiled with the AVX-512 inner loops.
bool bcjr_f32_uses_avx512();

namespace detail {
// Portable implementation, always compiled; the public entry point dispatches
// to the AVX-512 variant when available. Exposed so tests can cross-check.
void bcjr_block_f32_scalar(const TrellisTable& trellis, const float* in_a,
                           const float* in_b, const float* in_p, std::size_t T,
                           const float alpha_init[4], const float beta_init[4],
                           float* ext_a, float* ext_b, float* ext_p,
                           float alpha_out[4], float beta_in[4], BcjrScratchF& sc);
}  // namespace detail

}  // namespace sbcc

#endif
