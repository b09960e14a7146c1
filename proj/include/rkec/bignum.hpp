#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rkec {

// Unsigned big integer, just large enough for exact factorial/power counting
// and radix conversion of encapsulated keys. Limbs are little-endian with no
// trailing zero limbs (zero is the empty limb vector).
class BigUint {
public:
    BigUint() = default;
    explicit BigUint(uint64_t value);
    static BigUint pow2(uint32_t bits);
    static BigUint from_limbs(std::vector<uint64_t> limbs);
    static BigUint factorial(uint32_t n);
    static BigUint binomial(uint32_t n, uint32_t k);
    static BigUint pow_small(uint64_t base, uint32_t exponent);

    bool is_zero() const { return limbs_.empty(); }
    uint32_t bit_length() const;  // 0 for zero
    std::span<const uint64_t> limbs() const { return limbs_; }

    void add_small(uint64_t v);
    void mul_small(uint64_t v);
    // In-place divide by d, returning the remainder.
    uint64_t divmod_small(uint64_t d);

    // log base 2, accurate to double precision. Requires nonzero.
    double log2() const;

    // Lowercase hex, no prefix, zero padded on the left to min_digits.
    std::string to_hex(uint32_t min_digits = 1) const;
    static BigUint from_hex(std::string_view hex);

    std::strong_ordering operator<=>(const BigUint& other) const;
    bool operator==(const BigUint& other) const = default;

private:
    std::vector<uint64_t> limbs_;
    void trim();
};

}  // namespace rkec
