#include "rkec/accounting.hpp"

#include <stdexcept>

#include "rkec/bignum.hpp"
#include "rkec/params.hpp"

namespace rkec::accounting {

namespace {

uint64_t factorial64(uint32_t n) {
    // Exact up to 20!; callers guard.
    uint64_t f = 1;
    for (uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

uint32_t component_count(uint32_t sec, uint64_t codebook_size) {
    if (codebook_size < 2) throw std::invalid_argument("component_count: need at least 2 words");
    const BigUint target = BigUint::pow2(sec);
    BigUint space(1);
    uint32_t blocks = 0;
    while (space < target) {
        space.mul_small(codebook_size);
        ++blocks;
    }
    return blocks == 0 ? 1 : blocks;
}

uint32_t key_bits(uint64_t codebook_size, uint32_t blocks) {
    if (codebook_size < 2) throw std::invalid_argument("key_bits: need at least 2 words");
    const BigUint space = BigUint::pow_small(codebook_size, blocks);
    return space.bit_length() - 1;
}

uint64_t public_key_bits(const ParamSet& params) {
    return static_cast<uint64_t>(params.message_len + params.tail_len) * params.input_len;
}

double error_search_log2(uint32_t blocks, uint32_t searched_len, uint32_t correctable) {
    if (correctable > searched_len)
        throw std::invalid_argument("error_search_log2: budget exceeds searched length");
    const BigUint patterns = BigUint::binomial(searched_len, correctable);
    return blocks * patterns.log2();
}

double key_search_log2(uint64_t codebook_size, uint32_t blocks) {
    if (codebook_size < 2) throw std::invalid_argument("key_search_log2: need at least 2 words");
    return blocks * BigUint(codebook_size).log2();
}

double labeling_log2(uint32_t code_len) {
    if (code_len < 2 || code_len % 2 != 0)
        throw std::invalid_argument("labeling_log2: length must be even and >= 2");
    if (code_len > 40)
        throw std::invalid_argument("labeling_log2: lengths above 40 unsupported");
    BigUint count = BigUint::factorial(code_len);
    if (count.divmod_small(factorial64(code_len / 2)) != 0 ||
        count.divmod_small(factorial64(code_len / 2 - 1)) != 0)
        throw std::logic_error("labeling_log2: non-exact division");
    return count.log2();
}

uint64_t mceliece_pk_bits(uint64_t code_len, uint64_t dimension) {
    if (dimension >= code_len)
        throw std::invalid_argument("mceliece_pk_bits: dimension must be below length");
    return dimension * (code_len - dimension);
}

SecurityReport security_report(const ParamSet& params) {
    SecurityReport rep;
    rep.blocks = params.blocks;
    rep.key_bits = params.key_bits;
    rep.public_key_bits = public_key_bits(params);
    rep.error_search_log2 =
        error_search_log2(params.blocks, params.code_len - 1, params.correctable);
    rep.key_search_log2 = key_search_log2(params.codebook_size, params.blocks);
    rep.labeling_log2_per_block = labeling_log2(params.code_len);
    rep.labeling_log2_total = params.blocks * rep.labeling_log2_per_block;
    rep.mceliece_pk_bits = mceliece_pk_bits(kMcelieceRefLen, kMcelieceRefDim);
    return rep;
}

}  // namespace rkec::accounting
