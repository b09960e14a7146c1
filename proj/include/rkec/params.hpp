#pragma once

// Scalar parameters of one scheme instance and the preset catalogue.

#include <cstdint>
#include <string>
#include <string_view>

namespace rkec {

// All lengths count GF(2) coordinates.  Derivation rules:
//   code_len      = 2^log2_len
//   codebook_size = 2^(log2_len + 1) - 2
//   correctable   = 2^(log2_len - 2) - 1
//   block_len     = code_len + 1        (codeword plus one random pad bit)
//   input_len     = blocks * block_len
//   message_len   = blocks * code_len
//   tail_len      = ceil(blocks / 2),  surplus_len = floor(blocks / 2)
//   key_bits      = floor(blocks * log2(codebook_size))
struct ParamSet {
    std::string name;        // preset label, or "custom"
    uint32_t sec = 0;        // target security exponent in bits
    uint32_t log2_len = 0;
    uint32_t code_len = 0;
    uint32_t codebook_size = 0;
    uint32_t correctable = 0;
    uint32_t blocks = 0;
    uint32_t block_len = 0;
    uint32_t input_len = 0;
    uint32_t message_len = 0;
    uint32_t tail_len = 0;     // extra public rows beyond message_len
    uint32_t surplus_len = 0;  // input surplus not covered by tail rows
    uint32_t key_bits = 0;

    static ParamSet rm16();  // 16-coordinate component code, 256-bit target
    static ParamSet rm32();  // 32-coordinate component code, 256-bit target
    static ParamSet toy8();  // 8-coordinate toy, small enough to enumerate
    // Derives sec as the full key_bits of the chosen shape.
    static ParamSet custom(uint32_t log2_len, uint32_t blocks);
    static ParamSet make(uint32_t log2_len, uint32_t blocks, uint32_t sec, std::string name);
    static ParamSet preset(std::string_view name);  // throws on unknown label

    // Whether the tail alone carries enough hidden mixing to reach the
    // target exponent; true for the production presets, false for toys.
    bool meets_security_margin() const {
        return static_cast<uint64_t>(tail_len) * tail_len >= sec;
    }

    bool operator==(const ParamSet&) const = default;
};

}  // namespace rkec
