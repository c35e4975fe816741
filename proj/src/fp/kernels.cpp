#include "strata/fp/kernels.hpp"

namespace strata::fp {

namespace {
const Kernels* forced = nullptr;

const Kernels& pick() {
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
}
}  // namespace

const Kernels& active_kernels() {
    if (forced) return *forced;
    static const Kernels& chosen = pick();
    return chosen;
}

void force_kernels(const Kernels* k) { forced = k; }

}  // namespace strata::fp
