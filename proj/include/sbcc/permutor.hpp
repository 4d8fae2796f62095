#ifndef SBCC_PERMUTOR_HPP
#define SBCC_PERMUTOR_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbcc/rng.hpp"

namespace sbcc {

// Block permutor of fixed length T. Convention: apply(x)[i] = x[forward[i]],
// i.e. forward[i] names the source position of output element i, and
// inverse[forward[i]] == i.
struct BlockPermutor {
    std::vector<std::int32_t> forward;
    std::vector<std::int32_t> inverse;

    std::size_t size() const { return forward.size(); }

    template <typename T>
    void apply_into(std::span<const T> src, std::span<T> dst) const {
        const std::size_t n = forward.size();
        if (src.size() != n || dst.size() != n)
            throw std::invalid_argument("permutor: length mismatch");
        for (std::size_t i = 0; i < n; ++i) dst[i] = src[forward[i]];
    }

    template <typename T>
    void apply_inverse_into(std::span<const T> src, std::span<T> dst) const {
        const std::size_t n = forward.size();
        if (src.size() != n || dst.size() != n)
            throw std::invalid_argument("permutor: length mismatch");
        for (std::size_t i = 0; i < n; ++i) dst[i] = src[inverse[i]];
    }

    template <typename T>
    std::vector<T> apply(const std::vector<T>& src) const {
        std::vector<T> dst(src.size());
        apply_into(std::span<const T>(src), std::span<T>(dst));
        return dst;
    }

    template <typename T>
    std::vector<T> apply_inverse(const std::vector<T>& src) const {
        std::vector<T> dst(src.size());
        apply_inverse_into(std::span<const T>(src), std::span<T>(dst));
        return dst;
    }
};

BlockPermutor make_identity_permutor(std::size_t length);

// Uniform random permutation via Fisher-Yates with rejection-sampled indices,
// so the result depends only on the RNG stream, not on platform word sizes.
BlockPermutor make_random_permutor(std::size_t length, Xoshiro256pp& rng);

// Build from an explicit forward map; throws if it is not a permutation.
BlockPermutor make_permutor_from_forward(std::vector<std::int32_t> forward);

// Text round trip: first token is the length, then the forward map,
// whitespace separated.
void store_permutor(std::ostream& os, const BlockPermutor& p);
BlockPermutor load_permutor(std::istream& is);

void store_permutor_file(const std::string& path, const BlockPermutor& p);
BlockPermutor load_permutor_file(const std::string& path);

}  // namespace sbcc

#endif
