#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "rkec/bignum.hpp"
#include "rkec/params.hpp"

using rkec::BigUint;
using rkec::ParamSet;

namespace {

// Independent re-derivation of every scalar from (log2_len, blocks, sec).
void check_derived(const ParamSet& p, uint32_t log2_len, uint32_t blocks, uint32_t sec) {
    const uint32_t n = 1u << log2_len;
    CHECK(p.sec == sec);
    CHECK(p.log2_len == log2_len);
    CHECK(p.code_len == n);
    CHECK(p.codebook_size == 2 * n - 2);
    CHECK(p.correctable == n / 4 - 1);
    CHECK(p.blocks == blocks);
    CHECK(p.block_len == n + 1);
    CHECK(p.input_len == blocks * (n + 1));
    CHECK(p.message_len == blocks * n);
    CHECK(p.tail_len == (blocks + 1) / 2);
    CHECK(p.surplus_len == blocks / 2);
    CHECK(p.tail_len + p.surplus_len == blocks);
    CHECK(p.input_len == p.message_len + p.tail_len + p.surplus_len);
    // usable key bits: largest k with 2^k <= codebook_size^blocks
    const uint32_t oracle_bits =
        BigUint::pow_small(p.codebook_size, blocks).bit_length() - 1;
    CHECK(p.key_bits == oracle_bits);
    CHECK(p.key_bits >= p.sec);
}

}  // namespace

TEST_SUITE("params") {

TEST_CASE("rm16 preset carries the published shape") {
    const ParamSet p = ParamSet::rm16();
    check_derived(p, 4, 53, 256);
    CHECK(p.name == "rm16");
    CHECK(p.codebook_size == 30);
    CHECK(p.correctable == 3);
    CHECK(p.message_len == 848);
    CHECK(p.input_len == 901);
    CHECK(p.tail_len == 27);
    CHECK(p.surplus_len == 26);
    CHECK(p.key_bits == 260);
    CHECK(p.meets_security_margin());
}

TEST_CASE("rm32 preset carries the published shape") {
    const ParamSet p = ParamSet::rm32();
    check_derived(p, 5, 43, 256);
    CHECK(p.name == "rm32");
    CHECK(p.codebook_size == 62);
    CHECK(p.correctable == 7);
    CHECK(p.message_len == 1376);
    CHECK(p.input_len == 1419);
    CHECK(p.tail_len == 22);
    CHECK(p.surplus_len == 21);
    CHECK(p.key_bits == 256);
    CHECK(p.meets_security_margin());
}

TEST_CASE("toy8 preset is enumerable and admits no security margin") {
    const ParamSet p = ParamSet::toy8();
    check_derived(p, 3, 3, 11);
    CHECK(p.name == "toy8");
    CHECK(p.codebook_size == 14);
    CHECK(p.correctable == 1);
    CHECK(p.message_len == 24);
    CHECK(p.input_len == 27);
    CHECK(p.tail_len == 2);
    CHECK(p.surplus_len == 1);
    CHECK(p.key_bits == 11);
    CHECK_FALSE(p.meets_security_margin());
}

TEST_CASE("custom derives the target from the full symbol space") {
    const ParamSet p = ParamSet::custom(3, 2);
    check_derived(p, 3, 2, 7);  // floor(log2(14^2)) = 7
    CHECK(p.name == "custom");
    const ParamSet q = ParamSet::custom(4, 5);
    check_derived(q, 4, 5, 24);  // floor(5 log2 30) = 24
}

TEST_CASE("key bits agree with the float formula across the grid") {
    for (uint32_t v = 3; v <= 6; ++v) {
        for (uint32_t r = 1; r <= 60; ++r) {
            const ParamSet p = ParamSet::custom(v, r);
            const double f = static_cast<double>(2 * (1u << v) - 2);
            const uint32_t float_bits =
                static_cast<uint32_t>(std::floor(r * std::log2(f)));
            CHECK(p.key_bits == float_bits);
        }
    }
}

TEST_CASE("presets resolve by name") {
    CHECK(ParamSet::preset("rm16") == ParamSet::rm16());
    CHECK(ParamSet::preset("rm32") == ParamSet::rm32());
    CHECK(ParamSet::preset("toy8") == ParamSet::toy8());
    CHECK_THROWS_AS(ParamSet::preset("rm64"), std::invalid_argument);
    CHECK_THROWS_AS(ParamSet::preset(""), std::invalid_argument);
}

TEST_CASE("make rejects impossible shapes") {
    CHECK_THROWS_AS(ParamSet::make(2, 3, 11, "bad"), std::invalid_argument);
    CHECK_THROWS_AS(ParamSet::make(7, 3, 11, "bad"), std::invalid_argument);
    CHECK_THROWS_AS(ParamSet::make(3, 0, 11, "bad"), std::invalid_argument);
    // 3 blocks of the toy code hold only 11 usable bits
    CHECK_THROWS_AS(ParamSet::make(3, 3, 12, "bad"), std::invalid_argument);
    CHECK_NOTHROW(ParamSet::make(3, 3, 11, "ok"));
}

}  // TEST_SUITE
