#include "strata/fp/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace strata::fp {

namespace {

// Barrett reduction of 8 lanes of t < 2^32 modulo p, with m = floor(2^32/p).
// q = floor(t*m / 2^32) satisfies t - q*p in [0, 2p), so one conditional
// subtract finishes the job.
inline __m256i barrett8(__m256i t, __m256i vp, __m256i vm) {
    const __m256i t_odd = _mm256_srli_epi64(t, 32);
    const __m256i q_even = _mm256_srli_epi64(_mm256_mul_epu32(t, vm), 32);
    const __m256i q_odd = _mm256_mul_epu32(t_odd, vm);  // high half already in odd position
    const __m256i q = _mm256_blend_epi32(q_even, _mm256_and_si256(q_odd, _mm256_set1_epi64x(0xFFFFFFFF00000000ULL)), 0xAA);
    __m256i r = _mm256_sub_epi32(t, _mm256_mullo_epi32(q, vp));
    const __m256i ge = _mm256_cmpeq_epi32(_mm256_max_epu32(r, vp), r);  // r >= p
    r = _mm256_sub_epi32(r, _mm256_and_si256(ge, vp));
    return r;
}

void axpy_avx2(uint32_t* y, const uint32_t* x, uint32_t c, std::size_t n, uint32_t p) {
    if (c == 0) return;
    const uint32_t m = static_cast<uint32_t>((uint64_t{1} << 32) / p);
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
        const __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
        const __m256i t = _mm256_add_epi32(_mm256_mullo_epi32(xv, vc), yv);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), barrett8(t, vp, vm));
    }
    for (; i < n; ++i) y[i] = (y[i] + c * x[i]) % p;
}

void scale_avx2(uint32_t* y, uint32_t c, std::size_t n, uint32_t p) {
    const uint32_t m = static_cast<uint32_t>((uint64_t{1} << 32) / p);
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
        const __m256i t = _mm256_mullo_epi32(yv, vc);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), barrett8(t, vp, vm));
    }
    for (; i < n; ++i) y[i] = (c * y[i]) % p;
}

uint32_t dot_avx2(const uint32_t* a, const uint32_t* b, std::size_t n, uint32_t p) {
    __m256i acc_even = _mm256_setzero_si256();
    __m256i acc_odd = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i bv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc_even = _mm256_add_epi64(acc_even, _mm256_mul_epu32(av, bv));
        acc_odd = _mm256_add_epi64(acc_odd, _mm256_mul_epu32(_mm256_srli_epi64(av, 32), _mm256_srli_epi64(bv, 32)));
    }
    alignas(32) uint64_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc_even);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes + 4), acc_odd);
    uint64_t acc = 0;
    for (uint64_t v : lanes) acc += v;
    for (; i < n; ++i) acc += static_cast<uint64_t>(a[i]) * b[i];
    return static_cast<uint32_t>(acc % p);
}

}  // namespace

const Kernels* avx2_kernels() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Kernels k{"avx2", axpy_avx2, scale_avx2, dot_avx2};
    return &k;
}

}  // namespace strata::fp

#else

namespace strata::fp {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace strata::fp

#endif
