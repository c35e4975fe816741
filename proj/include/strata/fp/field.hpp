#pragma once

#include <cstdint>
#include <stdexcept>

namespace strata::fp {

/// Arithmetic in the prime field F_p, 2 <= p < 2^16.  Elements are reduced
/// representatives in [0, p).  All operations are exact.
class PrimeField {
public:
    explicit PrimeField(uint32_t p);

    uint32_t p() const { return p_; }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const { return (a * b) % p_; }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t inv(uint32_t a) const;
    uint32_t reduce_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<uint32_t>(r);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

    static bool is_prime(uint32_t n);

private:
    uint32_t p_;
};

}  // namespace strata::fp
