#include "rkec/bignum.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace rkec {

BigUint::BigUint(uint64_t value) {
    if (value != 0) limbs_.push_back(value);
}

BigUint BigUint::pow2(uint32_t bits) {
    BigUint out;
    out.limbs_.assign(bits / 64 + 1, 0);
    out.limbs_.back() = 1ull << (bits % 64);
    return out;
}

BigUint BigUint::from_limbs(std::vector<uint64_t> limbs) {
    BigUint out;
    out.limbs_ = std::move(limbs);
    out.trim();
    return out;
}

BigUint BigUint::factorial(uint32_t n) {
    BigUint out(1);
    for (uint32_t i = 2; i <= n; ++i) out.mul_small(i);
    return out;
}

BigUint BigUint::binomial(uint32_t n, uint32_t k) {
    if (k > n) return BigUint();
    if (k > n - k) k = n - k;
    BigUint out(1);
    for (uint32_t i = 1; i <= k; ++i) {
        out.mul_small(n - k + i);
        const uint64_t rem = out.divmod_small(i);
        if (rem != 0) throw std::logic_error("binomial: non-exact division");
    }
    return out;
}

BigUint BigUint::pow_small(uint64_t base, uint32_t exponent) {
    BigUint out(1);
    for (uint32_t i = 0; i < exponent; ++i) out.mul_small(base);
    return out;
}

uint32_t BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    const auto top = static_cast<uint32_t>(std::bit_width(limbs_.back()));
    return static_cast<uint32_t>(64 * (limbs_.size() - 1)) + top;
}

void BigUint::add_small(uint64_t v) {
    uint64_t carry = v;
    for (size_t i = 0; i < limbs_.size() && carry; ++i) {
        const uint64_t sum = limbs_[i] + carry;
        carry = sum < limbs_[i] ? 1 : 0;
        limbs_[i] = sum;
    }
    if (carry) limbs_.push_back(carry);
}

void BigUint::mul_small(uint64_t v) {
    if (v == 0) {
        limbs_.clear();
        return;
    }
    uint64_t carry = 0;
    for (auto& limb : limbs_) {
        const auto prod = static_cast<unsigned __int128>(limb) * v + carry;
        limb = static_cast<uint64_t>(prod);
        carry = static_cast<uint64_t>(prod >> 64);
    }
    if (carry) limbs_.push_back(carry);
}

uint64_t BigUint::divmod_small(uint64_t d) {
    if (d == 0) throw std::invalid_argument("BigUint: division by zero");
    uint64_t rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        const auto cur = (static_cast<unsigned __int128>(rem) << 64) | limbs_[i];
        limbs_[i] = static_cast<uint64_t>(cur / d);
        rem = static_cast<uint64_t>(cur % d);
    }
    trim();
    return rem;
}

double BigUint::log2() const {
    if (limbs_.empty()) throw std::domain_error("BigUint::log2 of zero");
    const uint32_t bits = bit_length();
    if (bits <= 63) return std::log2(static_cast<double>(limbs_[0]));
    // Use the top 64 bits; the discarded tail perturbs the result by < 2^-52.
    const size_t hi = limbs_.size() - 1;
    const uint32_t tw = bits - 64 * static_cast<uint32_t>(hi);  // significant bits in top limb
    const uint64_t top =
        tw == 64 ? limbs_[hi] : (limbs_[hi] << (64 - tw)) | (limbs_[hi - 1] >> tw);
    return std::log2(static_cast<double>(top)) + (bits - 64);
}

std::string BigUint::to_hex(uint32_t min_digits) const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    BigUint tmp = *this;
    while (!tmp.is_zero()) {
        out.push_back(digits[tmp.divmod_small(16)]);
    }
    while (out.size() < min_digits) out.push_back('0');
    return {out.rbegin(), out.rend()};
}

BigUint BigUint::from_hex(std::string_view hex) {
    BigUint out;
    for (char c : hex) {
        uint64_t d;
        if (c >= '0' && c <= '9') d = static_cast<uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') d = static_cast<uint64_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') d = static_cast<uint64_t>(c - 'A' + 10);
        else throw std::invalid_argument("BigUint::from_hex: bad digit");
        out.mul_small(16);
        out.add_small(d);
    }
    return out;
}

std::strong_ordering BigUint::operator<=>(const BigUint& other) const {
    if (limbs_.size() != other.limbs_.size())
        return limbs_.size() <=> other.limbs_.size();
    for (size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != other.limbs_[i]) return limbs_[i] <=> other.limbs_[i];
    }
    return std::strong_ordering::equal;
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

}  // namespace rkec
