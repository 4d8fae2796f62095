#include "sbcc/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "sbcc/llr.hpp"

namespace sbcc {

double awgn_sigma(double ebn0_db, double rate) {
    if (rate <= 0.0) throw std::invalid_argument("awgn_sigma: rate must be > 0");
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    return std::sqrt(1.0 / (2.0 * rate * ebn0));
}

double channel_llr(double y, double sigma) {
    return clamp_llr(2.0 * y / (sigma * sigma));
}

std::vector<double> transmit_bpsk_awgn(std::span<const std::uint8_t> bits,
                                       double sigma, Xoshiro256pp& rng) {
    std::vector<double> llrs(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const double x = bits[i] ? -1.0 : 1.0;
        const double y = x + sigma * rng.next_gaussian();
        llrs[i] = channel_llr(y, sigma);
    }
    return llrs;
}

}  // namespace sbcc
