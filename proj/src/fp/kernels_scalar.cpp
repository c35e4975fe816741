#include "strata/fp/kernels.hpp"

namespace strata::fp {

namespace {

void axpy_scalar(uint32_t* y, const uint32_t* x, uint32_t c, std::size_t n, uint32_t p) {
    if (c == 0) return;
    for (std::size_t i = 0; i < n; ++i) {
        // c*x fits in 32 bits for p < 2^16, and adding y keeps it there.
        y[i] = (y[i] + c * x[i]) % p;
    }
}

void scale_scalar(uint32_t* y, uint32_t c, std::size_t n, uint32_t p) {
    for (std::size_t i = 0; i < n; ++i) y[i] = (c * y[i]) % p;
}

uint32_t dot_scalar(const uint32_t* a, const uint32_t* b, std::size_t n, uint32_t p) {
    uint64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += static_cast<uint64_t>(a[i]) * b[i];
    return static_cast<uint32_t>(acc % p);
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{"scalar", axpy_scalar, scale_scalar, dot_scalar};
    return k;
}

}  // namespace strata::fp
