#ifndef SBCC_RNG_HPP
#define SBCC_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace sbcc {

// splitmix64 finalizer. Used to expand seeds and to derive independent
// sub-stream seeds; identical output on every platform.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive a child seed from a master seed and up to two stream tags. Each
// distinct (tag_a, tag_b) pair yields a statistically independent stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag_a,
                                 std::uint64_t tag_b = 0) {
    std::uint64_t s = master;
    std::uint64_t z = splitmix64(s);
    s = z ^ (tag_a * 0x9e3779b97f4a7c15ULL);
    z = splitmix64(s);
    s = z ^ (tag_b * 0xd1b54a32d192ed03ULL);
    return splitmix64(s);
}

// xoshiro256++ by Blackman & Vigna: fast, 256-bit state, portable and fully
// reproducible, unlike the implementation-defined std:: distributions.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1): top 53 bits scaled by 2^-53.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound) by rejection; unbiased for any bound.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    // Standard normal via the polar (Marsaglia) method. Uses only sqrt/log,
    // which are correctly rounded per IEEE-754, so the output sequence is
    // bit-identical across conforming platforms.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace sbcc

#endif
