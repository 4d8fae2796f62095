#include "sbcc/permutor.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace sbcc {

namespace {

std::vector<std::int32_t> invert(const std::vector<std::int32_t>& forward) {
    const auto n = static_cast<std::int32_t>(forward.size());
    std::vector<std::int32_t> inverse(forward.size(), -1);
    for (std::int32_t i = 0; i < n; ++i) {
        const std::int32_t src = forward[i];
        if (src < 0 || src >= n || inverse[src] != -1)
            throw std::invalid_argument("permutor: forward map is not a permutation");
        inverse[src] = i;
    }
    return inverse;
}

}  // namespace

BlockPermutor make_identity_permutor(std::size_t length) {
    BlockPermutor p;
    p.forward.resize(length);
    p.inverse.resize(length);
    for (std::size_t i = 0; i < length; ++i) {
        p.forward[i] = static_cast<std::int32_t>(i);
        p.inverse[i] = static_cast<std::int32_t>(i);
    }
    return p;
}

BlockPermutor make_random_permutor(std::size_t length, Xoshiro256pp& rng) {
    BlockPermutor p = make_identity_permutor(length);
    // Fisher-Yates; next_below keeps the draw unbiased and platform-stable.
    for (std::size_t i = length; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(p.forward[i - 1], p.forward[j]);
    }
    p.inverse = invert(p.forward);
    return p;
}

BlockPermutor make_permutor_from_forward(std::vector<std::int32_t> forward) {
    BlockPermutor p;
    p.inverse = invert(forward);
    p.forward = std::move(forward);
    return p;
}

void store_permutor(std::ostream& os, const BlockPermutor& p) {
    os << p.forward.size() << '\n';
    for (std::size_t i = 0; i < p.forward.size(); ++i)
        os << p.forward[i] << ((i + 1) % 16 == 0 ? '\n' : ' ');
    os << '\n';
}

BlockPermutor load_permutor(std::istream& is) {
    std::size_t n = 0;
    if (!(is >> n)) throw std::runtime_error("permutor: cannot read length");
    std::vector<std::int32_t> fwd(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!(is >> fwd[i])) throw std::runtime_error("permutor: truncated data");
    return make_permutor_from_forward(std::move(fwd));
}

void store_permutor_file(const std::string& path, const BlockPermutor& p) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("permutor: cannot open " + path);
    store_permutor(f, p);
}

BlockPermutor load_permutor_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("permutor: cannot open " + path);
    return load_permutor(f);
}

}  // namespace sbcc
