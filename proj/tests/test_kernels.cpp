#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "strata/fp/kernels.hpp"

using namespace strata::fp;

namespace {

// splitmix64; fixed seeds keep these tests deterministic.
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s += 0x9E3779B97f4A7C15ULL;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    uint32_t mod(uint32_t p) { return static_cast<uint32_t>(next() % p); }
};

std::vector<uint32_t> random_vec(Rng& rng, std::size_t n, uint32_t p) {
    std::vector<uint32_t> v(n);
    for (auto& x : v) x = rng.mod(p);
    return v;
}

const uint32_t primes[] = {2, 3, 5, 7, 13, 251, 257, 65521};

}  // namespace

TEST_CASE("scalar axpy matches direct definition") {
    Rng rng(1);
    for (uint32_t p : primes) {
        auto x = random_vec(rng, 37, p);
        auto y = random_vec(rng, 37, p);
        uint32_t c = rng.mod(p);
        auto expect = y;
        for (std::size_t i = 0; i < x.size(); ++i)
            expect[i] = static_cast<uint32_t>((static_cast<uint64_t>(y[i]) + static_cast<uint64_t>(c) * x[i]) % p);
        scalar_kernels().axpy(y.data(), x.data(), c, y.size(), p);
        CHECK(y == expect);
    }
}

TEST_CASE("avx2 kernels agree with scalar reference") {
    const Kernels* v = avx2_kernels();
    if (!v) return;  // machine without AVX2: dispatcher falls back to scalar
    Rng rng(2);
    for (uint32_t p : primes) {
        for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 200u, 1001u}) {
            auto x = random_vec(rng, n, p);
            auto y = random_vec(rng, n, p);
            uint32_t c = rng.mod(p);

            auto ys = y;
            scalar_kernels().axpy(ys.data(), x.data(), c, n, p);
            auto yv = y;
            v->axpy(yv.data(), x.data(), c, n, p);
            CHECK(ys == yv);

            auto ss = y;
            scalar_kernels().scale(ss.data(), c, n, p);
            auto sv = y;
            v->scale(sv.data(), c, n, p);
            CHECK(ss == sv);

            CHECK(scalar_kernels().dot(x.data(), y.data(), n, p) == v->dot(x.data(), y.data(), n, p));
        }
    }
}

TEST_CASE("avx2 kernels survive extreme operands") {
    const Kernels* v = avx2_kernels();
    if (!v) return;
    for (uint32_t p : primes) {
        std::vector<uint32_t> x(16, p - 1), y(16, p - 1);
        auto ys = y;
        scalar_kernels().axpy(ys.data(), x.data(), p - 1, 16, p);
        v->axpy(y.data(), x.data(), p - 1, 16, p);
        CHECK(y == ys);
    }
}

TEST_CASE("active kernel dispatch and forcing") {
    const Kernels& active = active_kernels();
    CHECK((std::string(active.name) == "scalar" || std::string(active.name) == "avx2"));
    force_kernels(&scalar_kernels());
    CHECK(std::string(active_kernels().name) == "scalar");
    force_kernels(nullptr);
}
