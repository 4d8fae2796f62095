#include <cmath>
#include <vector>

#include "doctest.h"
#include "sbcc/encoder_chain.hpp"
#include "sbcc/llr.hpp"
#include "sbcc/window_decoder.hpp"

using namespace sbcc;

namespace {

struct Setup {
    std::size_t T;
    BlockPermutor p0, p1, p2;

    explicit Setup(std::size_t block_len, std::uint64_t seed = 1000)
        : T(block_len) {
        Xoshiro256pp r0(seed), r1(seed + 1), r2(seed + 2);
        p0 = make_random_permutor(T, r0);
        p1 = make_random_permutor(T, r1);
        p2 = make_random_permutor(T, r2);
    }

    EncoderChain chain() const { return EncoderChain(T, p0, p1, p2); }
    WindowDecoder decoder(const DecoderConfig& cfg) const {
        return WindowDecoder(cfg, T, p0, p1, p2);
    }
};

std::vector<std::uint8_t> random_bits(std::size_t n, Xoshiro256pp& rng) {
    std::vector<std::uint8_t> v(n);
    for (auto& b : v) b = rng.next_bit() ? 1 : 0;
    return v;
}

std::vector<double> sure_llrs(const std::vector<std::uint8_t>& bits, double mag) {
    std::vector<double> v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) v[i] = bits[i] ? -mag : mag;
    return v;
}

// Encodes `frames` blocks, optionally zeroing the LLRs of chosen blocks, and
// returns all decisions plus the transmitted info bits.
struct RunResult {
    std::vector<BlockDecision> decisions;
    std::vector<std::vector<std::uint8_t>> tx;
    int requests = 0;
};

RunResult run_noiseless(const Setup& su, const DecoderConfig& cfg, std::size_t L,
                        double mag = 8.0, std::vector<std::size_t> erased = {},
                        std::uint64_t bit_seed = 7) {
    auto chain = su.chain();
    auto dec = su.decoder(cfg);
    Xoshiro256pp rng(bit_seed);
    RunResult rr;
    std::size_t tx = 0;
    auto transmit = [&]() -> bool {
        if (tx >= L) return false;
        ++rr.requests;
        const auto u = random_bits(su.T, rng);
        const auto cb = chain.encode_block(u);
        auto lu = sure_llrs(cb.u, mag);
        auto l1 = sure_llrs(cb.v1, mag);
        auto l2 = sure_llrs(cb.v2, mag);
        for (std::size_t z : erased)
            if (z == tx) {
                std::fill(lu.begin(), lu.end(), 0.0);
                std::fill(l1.begin(), l1.end(), 0.0);
                std::fill(l2.begin(), l2.end(), 0.0);
            }
        dec.push_block(lu, l1, l2);
        rr.tx.push_back(cb.u);
        ++tx;
        return true;
    };
    while (rr.decisions.size() < L) {
        auto ds = dec.decode_next(transmit);
        if (ds.empty()) break;
        for (auto& d : ds) rr.decisions.push_back(std::move(d));
        if (dec.resync_pending()) {
            chain.resync_reset();
            dec.acknowledge_resync();
        }
    }
    return rr;
}

std::uint64_t count_errors(const RunResult& rr) {
    std::uint64_t errs = 0;
    for (const auto& d : rr.decisions) {
        const auto& truth = rr.tx.at(std::size_t(d.time));
        for (std::size_t k = 0; k < truth.size(); ++k) errs += d.bits[k] != truth[k];
    }
    return errs;
}

}  // namespace

TEST_CASE("decoder config validation") {
    DecoderConfig c;
    c.validate();
    c.w_max = 2;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = DecoderConfig{};
    c.tau = 5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = DecoderConfig{};
    c.gamma = 0.7;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = DecoderConfig{};
    c.i2 = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("avg_abs_llr and ber_est reference values") {
    const std::vector<double> l{1.0, -2.0, 3.0, -4.0};
    CHECK(avg_abs_llr(std::span<const double>(l)) == doctest::Approx(2.5).epsilon(1e-15));
    const std::vector<double> zeros(8, 0.0);
    CHECK(ber_est(std::span<const double>(zeros)) == doctest::Approx(0.5).epsilon(1e-15));
    const std::vector<double> sat{50.0, -50.0};
    CHECK(ber_est(std::span<const double>(sat)) ==
          doctest::Approx(1.0 / (1.0 + std::exp(50.0))).epsilon(1e-12));
    const std::vector<double> mixed{0.0, std::log(3.0)};
    // P(err) = 0.5 and 0.25 -> mean 0.375
    CHECK(ber_est(std::span<const double>(mixed)) == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("all-zero window with uniform boundary keeps zero state") {
    const Setup su(24);
    DecoderConfig cfg;
    auto dec = su.decoder(cfg);
    const std::vector<double> z(su.T, 0.0);
    for (int i = 0; i < cfg.w; ++i) dec.push_block(z, z, z);
    dec.set_boundary_uniform();
    dec.run_horizontal_iteration();

    std::vector<float> d;
    for (int i = 0; i < cfg.w; ++i) {
        const LlrBank& b = dec.bank(std::size_t(i));
        for (std::size_t k = 0; k < su.T; ++k) {
            CHECK(b.ext_a1[k] == 0.0f);
            CHECK(b.ext_a2[k] == 0.0f);
            CHECK(b.ext_b1[k] == 0.0f);
            CHECK(b.ext_b2[k] == 0.0f);
        }
        dec.decision_llrs(std::size_t(i), d);
        for (float v : d) CHECK(v == 0.0f);
    }
}

TEST_CASE("decision LLR decomposes additively over its three terms") {
    const Setup su(32);
    DecoderConfig cfg;
    auto chain = su.chain();
    auto dec = su.decoder(cfg);
    Xoshiro256pp rng(3);
    for (int i = 0; i < cfg.w; ++i) {
        const auto u = random_bits(su.T, rng);
        const auto cb = chain.encode_block(u);
        dec.push_block(sure_llrs(cb.u, 2.5), sure_llrs(cb.v1, 2.5),
                       sure_llrs(cb.v2, 2.5));
    }
    dec.run_horizontal_iteration();
    std::vector<float> d;
    dec.decision_llrs(0, d);
    const LlrBank& b = dec.bank(0);
    std::vector<float> inv(su.T);
    su.p0.apply_inverse_into(std::span<const float>(b.ext_a2), std::span<float>(inv));
    for (std::size_t k = 0; k < su.T; ++k)
        CHECK(d[k] == clamp_llr_f(b.ch_u[k] + b.ext_a1[k] + inv[k]));
    // stored state is saturated correctly
    for (std::size_t k = 0; k < su.T; ++k) {
        CHECK(std::fabs(b.ext_a1[k]) <= float(kLlrMax));
        CHECK(std::fabs(b.ext_p2[k]) <= float(kLlrMax));
    }
}

TEST_CASE("noiseless frames decode error-free and stop after one iteration") {
    const Setup su(32);
    DecoderConfig cfg;  // all features on
    const auto rr = run_noiseless(su, cfg, 8);
    REQUIRE(rr.decisions.size() == 8);
    CHECK(count_errors(rr) == 0);
    for (const auto& d : rr.decisions) {
        CHECK(d.used_iterations == 1);  // gamma = 1e-7 stops immediately
        CHECK(!d.resync_triggered);
        CHECK(!d.flushed);
        CHECK(d.ber_est <= cfg.gamma);
        CHECK(d.avg_abs_llr > cfg.theta);
    }
}

TEST_CASE("fixed-window baseline runs exactly I2 iterations at width w") {
    const Setup su(32);
    DecoderConfig cfg;
    cfg.extension_enabled = false;
    cfg.resync_enabled = false;
    cfg.stopping_enabled = false;
    cfg.i2 = 4;
    const auto rr = run_noiseless(su, cfg, 6);
    REQUIRE(rr.decisions.size() == 6);
    CHECK(count_errors(rr) == 0);
    for (const auto& d : rr.decisions) {
        CHECK(d.used_iterations == cfg.i2);
        CHECK(d.used_window <= cfg.w);  // == w except at the stream tail
    }
    CHECK(rr.decisions[0].used_window == cfg.w);
    CHECK(rr.decisions[5].used_window == 1);  // final block, shrunken window
    CHECK(rr.decisions[4].used_window == 2);
}

TEST_CASE("gamma = 0.5 stops every target after a single iteration") {
    const Setup su(16);
    DecoderConfig cfg;
    cfg.gamma = 0.5;
    cfg.extension_enabled = false;
    cfg.resync_enabled = false;
    const auto rr = run_noiseless(su, cfg, 5, 1.0);  // weak LLRs: would iterate
    for (const auto& d : rr.decisions) CHECK(d.used_iterations == 1);
}

TEST_CASE("window extension grows to w_max when targets stay weak") {
    const Setup su(16);
    DecoderConfig cfg;
    cfg.i2 = 2;
    cfg.theta = 1e9;  // everything is "weak": forces maximal extension
    cfg.extension_enabled = true;
    cfg.resync_enabled = false;
    cfg.stopping_enabled = false;
    auto chain = su.chain();
    auto dec = su.decoder(cfg);
    Xoshiro256pp rng(17);
    int requests = 0;
    std::size_t tx = 0;
    auto transmit = [&]() -> bool {
        if (tx >= 10) return false;
        ++requests;
        const auto u = random_bits(su.T, rng);
        const auto cb = chain.encode_block(u);
        dec.push_block(sure_llrs(cb.u, 6.0), sure_llrs(cb.v1, 6.0),
                       sure_llrs(cb.v2, 6.0));
        ++tx;
        return true;
    };
    const auto ds = dec.decode_next(transmit);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].used_window == cfg.w_max);
    CHECK(ds[0].used_iterations == cfg.i2);
    CHECK(requests == cfg.w_max);  // w for the fill + (w_max - w) extensions
    CHECK(dec.w_cur() == cfg.w);   // reset after the shift
    CHECK(dec.buffered() == std::size_t(cfg.w_max - 1));  // lookahead retained

    // Later targets re-extend by consuming the lookahead first: exactly one
    // new block per target until the stream dries up, then the extension and
    // the window shrink toward the tail.
    std::vector<BlockDecision> rest;
    for (;;) {
        auto more = dec.decode_next(transmit);
        if (more.empty()) break;
        for (auto& d : more) rest.push_back(std::move(d));
    }
    REQUIRE(rest.size() == 9);
    CHECK(requests == 10);  // every transmitted block was pulled exactly once
    const int want_windows[9] = {6, 6, 6, 6, 5, 4, 3, 2, 1};
    for (int i = 0; i < 9; ++i) {
        CHECK(rest[std::size_t(i)].used_window == want_windows[i]);
        CHECK(rest[std::size_t(i)].used_iterations == cfg.i2);
    }
}

TEST_CASE("w_max == w disables extension silently") {
    const Setup su(16);
    DecoderConfig cfg;
    cfg.w_max = cfg.w;
    cfg.theta = 1e9;
    cfg.i2 = 3;
    cfg.resync_enabled = false;
    cfg.stopping_enabled = false;
    const auto rr = run_noiseless(su, cfg, 5);
    for (const auto& d : rr.decisions) {
        CHECK(d.used_window <= cfg.w);
        CHECK(d.used_iterations == cfg.i2);
    }
}

TEST_CASE("resynchronization flushes the window and resets the boundary") {
    const Setup su(16);
    DecoderConfig cfg;
    cfg.i2 = 2;
    cfg.theta = 1e9;  // every target fails its reliability check
    cfg.extension_enabled = false;
    cfg.resync_enabled = true;
    cfg.stopping_enabled = false;
    cfg.n_r = 1;

    auto chain = su.chain();
    auto dec = su.decoder(cfg);
    Xoshiro256pp rng(23);
    std::size_t tx = 0;
    auto transmit = [&]() -> bool {
        if (tx >= 12) return false;
        const auto u = random_bits(su.T, rng);
        const auto cb = chain.encode_block(u);
        dec.push_block(sure_llrs(cb.u, 6.0), sure_llrs(cb.v1, 6.0),
                       sure_llrs(cb.v2, 6.0));
        ++tx;
        return true;
    };
    const auto ds = dec.decode_next(transmit);
    REQUIRE(ds.size() == std::size_t(cfg.w));  // target + flushed remainder
    CHECK(ds[0].resync_triggered);
    CHECK(!ds[0].flushed);
    for (std::size_t i = 1; i < ds.size(); ++i) CHECK(ds[i].flushed);
    CHECK(dec.resync_pending());
    CHECK(dec.buffered() == 0);
    dec.acknowledge_resync();
    chain.resync_reset();

    // post-resync stream decodes cleanly against the re-reset chain
    const auto ds2 = dec.decode_next(transmit);
    REQUIRE(ds2.size() == std::size_t(cfg.w));  // theta keeps failing: flush again
    CHECK(ds2[0].time == ds[0].time + cfg.w);
}

TEST_CASE("n_r = 2 requires two consecutive failures") {
    const Setup su(16);
    DecoderConfig cfg;
    cfg.i2 = 1;
    cfg.theta = 1e9;
    cfg.extension_enabled = false;
    cfg.resync_enabled = true;
    cfg.stopping_enabled = false;
    cfg.n_r = 2;

    auto chain = su.chain();
    auto dec = su.decoder(cfg);
    Xoshiro256pp rng(29);
    std::size_t tx = 0;
    auto transmit = [&]() -> bool {
        if (tx >= 12) return false;
        const auto u = random_bits(su.T, rng);
        const auto cb = chain.encode_block(u);
        dec.push_block(sure_llrs(cb.u, 6.0), sure_llrs(cb.v1, 6.0),
                       sure_llrs(cb.v2, 6.0));
        ++tx;
        return true;
    };
    const auto d1 = dec.decode_next(transmit);
    REQUIRE(d1.size() == 1);  // first failure: normal shift
    CHECK(!d1[0].resync_triggered);
    CHECK(dec.fail_count() == 1);
    const auto d2 = dec.decode_next(transmit);
    REQUIRE(d2.size() == std::size_t(cfg.w));  // second failure: resync + flush
    CHECK(d2[0].resync_triggered);
    CHECK(dec.fail_count() == 0);
}

TEST_CASE("stream tail: windows shrink and every block is decided once") {
    const Setup su(16);
    DecoderConfig cfg;
    const auto rr = run_noiseless(su, cfg, 4);
    REQUIRE(rr.decisions.size() == 4);
    CHECK(count_errors(rr) == 0);
    std::vector<std::int64_t> times;
    for (const auto& d : rr.decisions) times.push_back(d.time);
    CHECK(times == std::vector<std::int64_t>{0, 1, 2, 3});
    CHECK(rr.decisions[3].used_window == 1);
}

TEST_CASE("identical inputs give identical decisions (decoder determinism)") {
    const Setup su(24);
    DecoderConfig cfg;
    const auto r1 = run_noiseless(su, cfg, 6, 2.0);
    const auto r2 = run_noiseless(su, cfg, 6, 2.0);
    REQUIRE(r1.decisions.size() == r2.decisions.size());
    for (std::size_t i = 0; i < r1.decisions.size(); ++i) {
        CHECK(r1.decisions[i].bits == r2.decisions[i].bits);
        CHECK(r1.decisions[i].avg_abs_llr == r2.decisions[i].avg_abs_llr);
        CHECK(r1.decisions[i].ber_est == r2.decisions[i].ber_est);
        CHECK(r1.decisions[i].used_iterations == r2.decisions[i].used_iterations);
    }
}

TEST_CASE("decode_next with an empty stream returns nothing") {
    const Setup su(8);
    DecoderConfig cfg;
    auto dec = su.decoder(cfg);
    const auto ds = dec.decode_next([]() { return false; });
    CHECK(ds.empty());
}
