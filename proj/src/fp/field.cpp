#include "strata/fp/field.hpp"

namespace strata::fp {

PrimeField::PrimeField(uint32_t p) : p_(p) {
    if (p < 2 || p >= (1u << 16)) throw std::invalid_argument("field modulus out of range [2, 2^16)");
    if (!is_prime(p)) throw std::invalid_argument("field modulus is not prime");
}

bool PrimeField::is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
    uint32_t r = 1 % p_;
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint32_t PrimeField::inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    return pow(a, p_ - 2);
}

}  // namespace strata::fp
