#pragma once

#include <cstddef>
#include <cstdint>

namespace strata::fp {

// Vector kernels over the prime field F_p.  All values are reduced
// representatives in [0, p) stored as uint32_t, with p < 2^16 so that a
// product plus an addend never overflows 32 bits.
//
// axpy:  y[i] <- (y[i] + c * x[i]) mod p
// scale: y[i] <- (c * y[i]) mod p
// dot:   sum_i a[i] * b[i] mod p
using AxpyFn = void (*)(uint32_t* y, const uint32_t* x, uint32_t c, std::size_t n, uint32_t p);
using ScaleFn = void (*)(uint32_t* y, uint32_t c, std::size_t n, uint32_t p);
using DotFn = uint32_t (*)(const uint32_t* a, const uint32_t* b, std::size_t n, uint32_t p);

struct Kernels {
    const char* name;
    AxpyFn axpy;
    ScaleFn scale;
    DotFn dot;
};

/// Scalar reference implementation.  Always available; the ground truth the
/// vector variants are equivalence-tested against.
const Kernels& scalar_kernels();

/// AVX2 implementation, or nullptr when the binary was built without AVX2
/// support or the CPU does not report the feature.
const Kernels* avx2_kernels();

/// Best implementation for this machine, resolved once on first use.
const Kernels& active_kernels();

/// Test hook: force a specific implementation (nullptr restores automatic
/// selection).  Not thread safe; intended for equivalence tests only.
void force_kernels(const Kernels* k);

}  // namespace strata::fp
