#ifndef SBCC_LLR_HPP
#define SBCC_LLR_HPP

#include <algorithm>
#include <cmath>

namespace sbcc {

// Log-likelihood ratio convention used throughout: L = ln(P(bit=0)/P(bit=1)).
// BPSK maps bit 0 -> +1.0, so positive channel observations give positive LLRs.
using Llr = double;

// Saturation magnitude for every stored LLR. exp(-50) is below double rounding
// noise, so +/-50 behaves like a known bit without producing infinities.
inline constexpr double kLlrMax = 50.0;

// Sentinel for log-domain "probability zero" state metrics.
inline constexpr double kLogZero = -1e30;

inline double clamp_llr(double v) { return std::clamp(v, -kLlrMax, kLlrMax); }
inline float clamp_llr_f(float v) {
    return std::clamp(v, -static_cast<float>(kLlrMax), static_cast<float>(kLlrMax));
}

// max*(x, y) = ln(e^x + e^y) = max(x,y) + ln(1 + e^-|x-y|).
// Beyond |x-y| > 37.5 the correction is under 1e-16 and is dropped, which
// also makes the log-zero sentinel an exact identity element.
inline double max_star(double x, double y) {
    const double m = x > y ? x : y;
    const double d = x > y ? x - y : y - x;
    if (d > 37.5) return m;
    return m + std::log1p(std::exp(-d));
}

}  // namespace sbcc

#endif
