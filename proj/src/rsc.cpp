#include "sbcc/rsc.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>

#if defined(__AVX512F__) && !defined(SBCC_NO_AVX512)
#include <immintrin.h>
#define SBCC_HAVE_AVX512 1
#else
#define SBCC_HAVE_AVX512 0
#endif

namespace sbcc {

TrellisTable build_trellis() {
    TrellisTable t{};
    std::array<int, 4> fill{};
    for (int s = 0; s < kNumStates; ++s) {
        const int r1 = (s >> 1) & 1;
        const int r2 = s & 1;
        for (int ab = 0; ab < 4; ++ab) {
            const int a = (ab >> 1) & 1;
            const int b = ab & 1;
            const int p = a ^ b ^ r1;
            const int nr1 = r2 ^ p;
            const int nr2 = b ^ p;
            const int id = s * 4 + ab;
            t.next[id] = static_cast<std::uint8_t>(nr1 * 2 + nr2);
            t.parity[id] = static_cast<std::uint8_t>(p);
        }
    }
    for (int id = 0; id < 16; ++id) {
        const int ns = t.next[id];
        t.incoming[ns][fill[ns]++] = static_cast<std::uint8_t>(id);
    }
    for (int s = 0; s < kNumStates; ++s)
        if (fill[s] != 4) throw std::logic_error("trellis: irregular connectivity");
    return t;
}

EncodeResult encode_block(const TrellisTable& trellis, ComponentState start,
                          std::span<const std::uint8_t> a,
                          std::span<const std::uint8_t> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("encode_block: input length mismatch");
    EncodeResult r;
    r.parity.resize(a.size());
    ComponentState s = start;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const int id = s * 4 + ((a[k] & 1) * 2 + (b[k] & 1));
        r.parity[k] = trellis.parity[id];
        s = trellis.next[id];
    }
    r.end_state = s;
    return r;
}

// ---- double precision reference BCJR ----------------------------------------

namespace {

inline void normalize4(StateMetrics& m) {
    double mx = m[0];
    for (int s = 1; s < 4; ++s) mx = m[s] > mx ? m[s] : mx;
    for (int s = 0; s < 4; ++s) m[s] -= mx;
}

inline double branch_gamma(double ha, double hb, double hp, int id,
                           const TrellisTable& t) {
    const int a = (id >> 1) & 1;
    const int b = id & 1;
    const int p = t.parity[id];
    return (a ? -ha : ha) + (b ? -hb : hb) + (p ? -hp : hp);
}

}  // namespace

BcjrResult bcjr_block(const TrellisTable& trellis, std::span<const double> in_a,
                      std::span<const double> in_b, std::span<const double> in_p,
                      const StateMetrics& alpha_init, const StateMetrics& beta_init) {
    const std::size_t T = in_a.size();
    if (T == 0 || in_b.size() != T || in_p.size() != T)
        throw std::invalid_argument("bcjr_block: bad port lengths");

    BcjrResult out;
    out.ext_a.resize(T);
    out.ext_b.resize(T);
    out.ext_p.resize(T);

    std::vector<StateMetrics> alpha(T + 1);
    alpha[0] = alpha_init;
    normalize4(alpha[0]);
    for (std::size_t k = 0; k < T; ++k) {
        const double ha = 0.5 * in_a[k], hb = 0.5 * in_b[k], hp = 0.5 * in_p[k];
        for (int ns = 0; ns < 4; ++ns) {
            const auto& inc = trellis.incoming[ns];
            double acc = kLogZero;
            for (int j = 0; j < 4; ++j) {
                const int id = inc[j];
                acc = max_star(acc, alpha[k][id >> 2] + branch_gamma(ha, hb, hp, id, trellis));
            }
            alpha[k + 1][ns] = acc;
        }
        normalize4(alpha[k + 1]);
    }

    StateMetrics beta_next = beta_init;
    normalize4(beta_next);
    for (std::size_t kk = T; kk-- > 0;) {
        const double ha = 0.5 * in_a[kk], hb = 0.5 * in_b[kk], hp = 0.5 * in_p[kk];

        // Full branch metrics at this step, then per-port bin reductions.
        double bin[3][2];
        for (auto& row : bin) row[0] = row[1] = kLogZero;
        for (int id = 0; id < 16; ++id) {
            const double m = alpha[kk][id >> 2] + branch_gamma(ha, hb, hp, id, trellis) +
                             beta_next[trellis.next[id]];
            bin[0][(id >> 1) & 1] = max_star(bin[0][(id >> 1) & 1], m);
            bin[1][id & 1] = max_star(bin[1][id & 1], m);
            bin[2][trellis.parity[id]] = max_star(bin[2][trellis.parity[id]], m);
        }
        out.ext_a[kk] = clamp_llr(bin[0][0] - bin[0][1] - in_a[kk]);
        out.ext_b[kk] = clamp_llr(bin[1][0] - bin[1][1] - in_b[kk]);
        out.ext_p[kk] = clamp_llr(bin[2][0] - bin[2][1] - in_p[kk]);

        StateMetrics beta_k;
        for (int s = 0; s < 4; ++s) {
            double acc = kLogZero;
            for (int ab = 0; ab < 4; ++ab) {
                const int id = s * 4 + ab;
                acc = max_star(acc, branch_gamma(ha, hb, hp, id, trellis) +
                                        beta_next[trellis.next[id]]);
            }
            beta_k[s] = acc;
        }
        normalize4(beta_k);
        beta_next = beta_k;
    }

    out.alpha_out = alpha[T];
    out.beta_in = beta_next;
    return out;
}

// ---- single precision fast kernel -------------------------------------------

namespace {

// corr(d) = log1p(exp(-d)) as a single degree-10 Horner chain on
// [0, kCorrClamp]; beyond the clamp the true value is < 3e-5 and the poly
// endpoint stands in for it. Max abs error ~1e-4, well below the noise the
// single-precision path tolerates. The vector path mirrors this op for op
// so both kernels round identically.
constexpr float kCorrClamp = 10.5f;
constexpr float kCorrC[11] = {0.69305f,        -0.49850172f,    0.11928086f,
                              0.009385658f,    -0.013298567f,   0.003910771f,
                              -0.00064248f,    6.581379e-05f,   -4.1832363e-06f,
                              1.5149308e-07f,  -2.3940496e-09f};

inline float corr_term(float d) {
    float c = kCorrC[10];
    c = std::fma(c, d, kCorrC[9]);
    c = std::fma(c, d, kCorrC[8]);
    c = std::fma(c, d, kCorrC[7]);
    c = std::fma(c, d, kCorrC[6]);
    c = std::fma(c, d, kCorrC[5]);
    c = std::fma(c, d, kCorrC[4]);
    c = std::fma(c, d, kCorrC[3]);
    c = std::fma(c, d, kCorrC[2]);
    c = std::fma(c, d, kCorrC[1]);
    c = std::fma(c, d, kCorrC[0]);
    return c;
}

inline float max_star_f(float x, float y) {
    const float m = x > y ? x : y;
    float d = x > y ? x - y : y - x;
    d = d < kCorrClamp ? d : kCorrClamp;
    return m + corr_term(d);
}

inline void normalize4f(float* m) {
    float mx = m[0];
    for (int s = 1; s < 4; ++s) mx = m[s] > mx ? m[s] : mx;
    for (int s = 0; s < 4; ++s) m[s] -= mx;
}

}  // namespace

namespace detail {

void bcjr_block_f32_scalar(const TrellisTable& tr, const float* in_a,
                           const float* in_b, const float* in_p, std::size_t T,
                           const float alpha_init[4], const float beta_init[4],
                           float* ext_a, float* ext_b, float* ext_p,
                           float alpha_out[4], float beta_in[4], BcjrScratchF& sc) {
    sc.resize(T);
    float* alpha = sc.alpha.data();
    float* gm = sc.gm.data();

    // gm index per branch: (ab << 1) | parity.
    std::uint8_t gidx[16];
    for (int id = 0; id < 16; ++id)
        gidx[id] = static_cast<std::uint8_t>(((id & 3) << 1) | tr.parity[id]);

    std::memcpy(alpha, alpha_init, 4 * sizeof(float));
    normalize4f(alpha);
    for (std::size_t k = 0; k < T; ++k) {
        const float ha = 0.5f * in_a[k], hb = 0.5f * in_b[k], hp = 0.5f * in_p[k];
        float* g = gm + 8 * k;
        // b/p sums first, then +-ha: mirrors the fma nesting of the vector
        // path so both kernels round identically.
        const float spp = hb + hp;
        const float spm = hb - hp;
        const float smp = hp - hb;
        g[0] = ha + spp;
        g[1] = ha + spm;
        g[2] = ha + smp;
        g[3] = ha - spp;
        g[4] = spp - ha;
        g[5] = spm - ha;
        g[6] = smp - ha;
        g[7] = -spp - ha;
        const float* ak = alpha + 4 * k;
        float* an = alpha + 4 * (k + 1);
        for (int ns = 0; ns < 4; ++ns) {
            const auto& inc = tr.incoming[ns];
            const float c0 = ak[inc[0] >> 2] + g[gidx[inc[0]]];
            const float c1 = ak[inc[1] >> 2] + g[gidx[inc[1]]];
            const float c2 = ak[inc[2] >> 2] + g[gidx[inc[2]]];
            const float c3 = ak[inc[3] >> 2] + g[gidx[inc[3]]];
            an[ns] = max_star_f(max_star_f(c0, c1), max_star_f(c2, c3));
        }
        normalize4f(an);
    }
    std::memcpy(alpha_out, alpha + 4 * T, 4 * sizeof(float));

    int pgrp[2][8], pcnt[2] = {0, 0};
    for (int id = 0; id < 16; ++id)
        pgrp[tr.parity[id]][pcnt[tr.parity[id]]++] = id;

    float bn[4];
    std::memcpy(bn, beta_init, 4 * sizeof(float));
    normalize4f(bn);
    const float fmax = float(kLlrMax);
    for (std::size_t kk = T; kk-- > 0;) {
        const float* g = gm + 8 * kk;
        const float* ak = alpha + 4 * kk;

        float cb[16], m[16];
        for (int id = 0; id < 16; ++id) {
            cb[id] = g[gidx[id]] + bn[tr.next[id]];   // beta candidate
            m[id] = cb[id] + ak[id >> 2];             // full branch metric
        }

        // Balanced trees keep the bins bit-symmetric for symmetric inputs.
        auto lse8 = [&](int i0, int i1, int i2, int i3, int i4, int i5, int i6,
                        int i7) {
            const float l0 = max_star_f(m[i0], m[i1]);
            const float l1 = max_star_f(m[i2], m[i3]);
            const float l2 = max_star_f(m[i4], m[i5]);
            const float l3 = max_star_f(m[i6], m[i7]);
            return max_star_f(max_star_f(l0, l1), max_star_f(l2, l3));
        };
        const float a0 = lse8(0, 1, 4, 5, 8, 9, 12, 13);
        const float a1 = lse8(2, 3, 6, 7, 10, 11, 14, 15);
        {
            float v = a0 - a1 - in_a[kk];
            ext_a[kk] = v < -fmax ? -fmax : (v > fmax ? fmax : v);
        }
        if (ext_b) {
            const float b0 = lse8(0, 2, 4, 6, 8, 10, 12, 14);
            const float b1 = lse8(1, 3, 5, 7, 9, 11, 13, 15);
            float v = b0 - b1 - in_b[kk];
            ext_b[kk] = v < -fmax ? -fmax : (v > fmax ? fmax : v);
        }
        if (ext_p) {
            const int* p0 = pgrp[0];
            const int* p1 = pgrp[1];
            const float q0 = lse8(p0[0], p0[1], p0[2], p0[3], p0[4], p0[5], p0[6], p0[7]);
            const float q1 = lse8(p1[0], p1[1], p1[2], p1[3], p1[4], p1[5], p1[6], p1[7]);
            float v = q0 - q1 - in_p[kk];
            ext_p[kk] = v < -fmax ? -fmax : (v > fmax ? fmax : v);
        }

        float nb[4];
        for (int s = 0; s < 4; ++s) {
            const int id = s * 4;
            nb[s] = max_star_f(max_star_f(cb[id], cb[id + 1]),
                               max_star_f(cb[id + 2], cb[id + 3]));
        }
        normalize4f(nb);
        std::memcpy(bn, nb, sizeof(nb));
    }
    std::memcpy(beta_in, bn, 4 * sizeof(float));
}

#if SBCC_HAVE_AVX512

namespace {

// Elementwise 16-lane max*(x, y); mirrors the scalar corr_term exactly.
inline __m512 lse16(__m512 x, __m512 y) {
    const __m512 vmax = _mm512_max_ps(x, y);
    const __m512 vmin = _mm512_min_ps(x, y);
    __m512 d = _mm512_sub_ps(vmax, vmin);
    d = _mm512_min_ps(d, _mm512_set1_ps(kCorrClamp));
    __m512 c = _mm512_set1_ps(kCorrC[10]);
    c = _mm512_fmadd_ps(c, d, _mm512_set1_ps(kCorrC[9]));
    c = _mm512_fmadd_ps(c, d, _mm512_set1_ps(kCorrC[8]));
    c = _mm512_fmadd_ps(c, d, _mm512_set1_ps(kCorrC[7]));
    c = _mm512_fmadd_ps(c, d, _mm512_set1_ps(kCorrC[6]));
    c = _mm512_fmadd_ps(c, d, _mm512_set1_ps(kCorrC[5]));
    c = _mm512_fmadd_ps(c, d, _mm512_set1_ps(kCorrC[4]));
    c = _mm512_fmadd_ps(c, d, _mm512_set1_ps(kCorrC[3]));
    c = _mm512_fmadd_ps(c, d, _mm512_set1_ps(kCorrC[2]));
    c = _mm512_fmadd_ps(c, d, _mm512_set1_ps(kCorrC[1]));
    c = _mm512_fmadd_ps(c, d, _mm512_set1_ps(kCorrC[0]));
    return _mm512_add_ps(vmax, c);
}

// Horizontal max of lanes 0..3, replicated to all four lanes.
inline __m128 hmax4(__m128 v) {
    __m128 t = _mm_max_ps(v, _mm_shuffle_ps(v, v, _MM_SHUFFLE(1, 0, 3, 2)));
    t = _mm_max_ps(t, _mm_shuffle_ps(t, t, _MM_SHUFFLE(2, 3, 0, 1)));
    return t;
}

struct KernelIdx {
    alignas(64) int sidx[16], gidxv[16], nxt[16];
    alignas(64) int fw1l[16], fw1r[16];
    alignas(64) int w1l[16], w1r[16], w2l[16], w2r[16], w3l[16], w3r[16];
    alignas(64) int w4l[16], w4r[16];

    explicit KernelIdx(const TrellisTable& tr) {
        for (int id = 0; id < 16; ++id) {
            sidx[id] = id >> 2;
            gidxv[id] = ((id & 3) << 1) | tr.parity[id];
            nxt[id] = tr.next[id];
        }
        // forward: lanes 2ns+h reduce incoming[ns] pairs, then even/odd.
        for (int ns = 0; ns < 4; ++ns)
            for (int h = 0; h < 2; ++h) {
                fw1l[2 * ns + h] = tr.incoming[ns][2 * h];
                fw1r[2 * ns + h] = tr.incoming[ns][2 * h + 1];
            }
        for (int j = 8; j < 16; ++j) fw1l[j] = fw1r[j] = 0;

        // backward wave 1: [a0|a1|b0|b1] pair reductions over branch metrics.
        int grp[4][8], cnt[4] = {0, 0, 0, 0};
        for (int id = 0; id < 16; ++id) {
            const int a = (id >> 1) & 1, b = id & 1;
            grp[a][cnt[a]++] = id;          // a0 -> 0, a1 -> 1
            grp[2 + b][cnt[2 + b]++] = id;  // b0 -> 2, b1 -> 3
        }
        for (int gidx = 0; gidx < 4; ++gidx)
            for (int j = 0; j < 4; ++j) {
                w1l[gidx * 4 + j] = grp[gidx][2 * j];
                w1r[gidx * 4 + j] = grp[gidx][2 * j + 1];
            }
        // backward wave 2: [p0|p1] from branch metrics, beta pairs from cb
        // (permutex2var: source B lanes are offset by 16).
        int pg[2][8], pc[2] = {0, 0};
        for (int id = 0; id < 16; ++id) pg[tr.parity[id]][pc[tr.parity[id]]++] = id;
        for (int p = 0; p < 2; ++p)
            for (int j = 0; j < 4; ++j) {
                w2l[p * 4 + j] = pg[p][2 * j];
                w2r[p * 4 + j] = pg[p][2 * j + 1];
            }
        for (int j = 0; j < 8; ++j) {
            w2l[8 + j] = 16 + 2 * j;
            w2r[8 + j] = 16 + 2 * j + 1;
        }
        // backward wave 3: halve wave1 into lanes 0..7 and wave2 into 8..15.
        for (int j = 0; j < 8; ++j) {
            w3l[j] = 2 * j;
            w3r[j] = 2 * j + 1;
            w3l[8 + j] = 16 + 2 * j;
            w3r[8 + j] = 16 + 2 * j + 1;
        }
        // backward wave 4: finals a0,a1,b0,b1,p0,p1 in lanes 0..5.
        for (int j = 0; j < 6; ++j) {
            w4l[j] = 2 * j;
            w4r[j] = 2 * j + 1;
        }
        for (int j = 6; j < 16; ++j) w4l[j] = w4r[j] = 0;
    }
};

}  // namespace

void bcjr_block_f32_avx512(const TrellisTable& tr, const float* in_a,
                           const float* in_b, const float* in_p, std::size_t T,
                           const float alpha_init[4], const float beta_init[4],
                           float* ext_a, float* ext_b, float* ext_p,
                           float alpha_out[4], float beta_in[4], BcjrScratchF& sc) {
    const KernelIdx kix(tr);
    sc.resize(T);
    float* alpha = sc.alpha.data();
    float* gm = sc.gm.data();

    const __m512i SIDX = _mm512_loadu_si512(kix.sidx);
    const __m512i GIDX = _mm512_loadu_si512(kix.gidxv);
    const __m512i NXT = _mm512_loadu_si512(kix.nxt);
    const __m512i FW1L = _mm512_loadu_si512(kix.fw1l);
    const __m512i FW1R = _mm512_loadu_si512(kix.fw1r);
    const __m512i W1L = _mm512_loadu_si512(kix.w1l);
    const __m512i W1R = _mm512_loadu_si512(kix.w1r);
    const __m512i W2L = _mm512_loadu_si512(kix.w2l);
    const __m512i W2R = _mm512_loadu_si512(kix.w2r);
    const __m512i W3L = _mm512_loadu_si512(kix.w3l);
    const __m512i W3R = _mm512_loadu_si512(kix.w3r);
    const __m512i W4L = _mm512_loadu_si512(kix.w4l);
    const __m512i W4R = _mm512_loadu_si512(kix.w4r);
    const __m512i EVEN8 = _mm512_set_epi32(0, 0, 0, 0, 0, 0, 0, 0, 14, 12, 10, 8, 6, 4, 2, 0);
    const __m512i ODD8 = _mm512_set_epi32(0, 0, 0, 0, 0, 0, 0, 0, 15, 13, 11, 9, 7, 5, 3, 1);
    const __m512i NBIDX = _mm512_set_epi32(15, 14, 13, 12, 15, 14, 13, 12, 15, 14,
                                           13, 12, 15, 14, 13, 12);
    // Sign patterns of the 8 branch-input metrics, index (ab<<1)|p.
    const __m512 SA = _mm512_set_ps(0, 0, 0, 0, 0, 0, 0, 0, -1, -1, -1, -1, 1, 1, 1, 1);
    const __m512 SB = _mm512_set_ps(0, 0, 0, 0, 0, 0, 0, 0, -1, -1, 1, 1, -1, -1, 1, 1);
    const __m512 SP = _mm512_set_ps(0, 0, 0, 0, 0, 0, 0, 0, -1, 1, -1, 1, -1, 1, -1, 1);

    __m128 va4 = _mm_loadu_ps(alpha_init);
    va4 = _mm_sub_ps(va4, hmax4(va4));
    _mm_storeu_ps(alpha, va4);
    for (std::size_t k = 0; k < T; ++k) {
        const __m512 ha = _mm512_set1_ps(0.5f * in_a[k]);
        const __m512 hb = _mm512_set1_ps(0.5f * in_b[k]);
        const __m512 hp = _mm512_set1_ps(0.5f * in_p[k]);
        const __m512 g8 = _mm512_fmadd_ps(ha, SA, _mm512_fmadd_ps(hb, SB, _mm512_mul_ps(hp, SP)));
        _mm256_storeu_ps(gm + 8 * k, _mm512_castps512_ps256(g8));

        const __m512 va = _mm512_broadcast_f32x4(va4);
        const __m512 cand = _mm512_add_ps(_mm512_permutexvar_ps(SIDX, va),
                                          _mm512_permutexvar_ps(GIDX, g8));
        const __m512 w1 = lse16(_mm512_permutexvar_ps(FW1L, cand),
                                _mm512_permutexvar_ps(FW1R, cand));
        const __m512 w2 = lse16(_mm512_permutexvar_ps(EVEN8, w1),
                                _mm512_permutexvar_ps(ODD8, w1));
        __m128 na = _mm512_castps512_ps128(w2);
        na = _mm_sub_ps(na, hmax4(na));
        _mm_storeu_ps(alpha + 4 * (k + 1), na);
        va4 = na;
    }
    _mm_storeu_ps(alpha_out, va4);

    __m128 bn4 = _mm_loadu_ps(beta_init);
    bn4 = _mm_sub_ps(bn4, hmax4(bn4));
    for (std::size_t kk = T; kk-- > 0;) {
        const __m512 g8 =
            _mm512_castps256_ps512(_mm256_loadu_ps(gm + 8 * kk));
        const __m512 vbn = _mm512_broadcast_f32x4(bn4);
        const __m512 cb = _mm512_add_ps(_mm512_permutexvar_ps(GIDX, g8),
                                        _mm512_permutexvar_ps(NXT, vbn));
        const __m512 va = _mm512_broadcast_f32x4(_mm_loadu_ps(alpha + 4 * kk));
        const __m512 m = _mm512_add_ps(cb, _mm512_permutexvar_ps(SIDX, va));

        const __m512 w1 = lse16(_mm512_permutexvar_ps(W1L, m),
                                _mm512_permutexvar_ps(W1R, m));
        const __m512 w2 = lse16(_mm512_permutex2var_ps(m, W2L, cb),
                                _mm512_permutex2var_ps(m, W2R, cb));
        const __m512 w3 = lse16(_mm512_permutex2var_ps(w1, W3L, w2),
                                _mm512_permutex2var_ps(w1, W3R, w2));

        // nb = normalized wave-3 lanes 12..15 (next step's beta).
        __m128 nb = _mm512_castps512_ps128(_mm512_permutexvar_ps(NBIDX, w3));
        bn4 = _mm_sub_ps(nb, hmax4(nb));

        const __m512 w4 = lse16(_mm512_permutexvar_ps(W4L, w3),
                                _mm512_permutexvar_ps(W4R, w3));
        alignas(64) float w[16];
        _mm512_storeu_ps(w, w4);
        const float fmax = float(kLlrMax);
        float v = w[0] - w[1] - in_a[kk];
        ext_a[kk] = v < -fmax ? -fmax : (v > fmax ? fmax : v);
        if (ext_b) {
            v = w[2] - w[3] - in_b[kk];
            ext_b[kk] = v < -fmax ? -fmax : (v > fmax ? fmax : v);
        }
        if (ext_p) {
            v = w[4] - w[5] - in_p[kk];
            ext_p[kk] = v < -fmax ? -fmax : (v > fmax ? fmax : v);
        }
    }
    _mm_storeu_ps(beta_in, bn4);
}

#endif  // SBCC_HAVE_AVX512

}  // namespace detail

void bcjr_block_f32(const TrellisTable& trellis, const float* in_a,
                    const float* in_b, const float* in_p, std::size_t block_len,
                    const float alpha_init[4], const float beta_init[4],
                    float* ext_a, float* ext_b, float* ext_p, float alpha_out[4],
                    float beta_in[4], BcjrScratchF& scratch) {
    if (block_len == 0) throw std::invalid_argument("bcjr_block_f32: empty block");
#if SBCC_HAVE_AVX512
    detail::bcjr_block_f32_avx512(trellis, in_a, in_b, in_p, block_len, alpha_init,
                                  beta_init, ext_a, ext_b, ext_p, alpha_out,
                                  beta_in, scratch);
#else
    detail::bcjr_block_f32_scalar(trellis, in_a, in_b, in_p, block_len, alpha_init,
                                  beta_init, ext_a, ext_b, ext_p, alpha_out,
                                  beta_in, scratch);
#endif
}

bool bcjr_f32_uses_avx512() { return SBCC_HAVE_AVX512 != 0; }

}  // namespace sbcc
