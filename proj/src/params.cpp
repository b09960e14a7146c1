#include "rkec/params.hpp"

#include <stdexcept>

#include "rkec/accounting.hpp"

namespace rkec {

ParamSet ParamSet::make(uint32_t log2_len, uint32_t blocks, uint32_t sec, std::string name) {
    if (log2_len < 3 || log2_len > 6)
        throw std::invalid_argument("params: log2 length outside [3, 6]");
    if (blocks < 1) throw std::invalid_argument("params: need at least one block");
    if (sec < 1) throw std::invalid_argument("params: security exponent must be positive");
    ParamSet p;
    p.name = std::move(name);
    p.sec = sec;
    p.log2_len = log2_len;
    p.code_len = 1u << log2_len;
    p.codebook_size = (1u << (log2_len + 1)) - 2;
    p.correctable = (1u << (log2_len - 2)) - 1;
    p.blocks = blocks;
    p.block_len = p.code_len + 1;
    p.input_len = blocks * p.block_len;
    p.message_len = blocks * p.code_len;
    p.tail_len = (blocks + 1) / 2;
    p.surplus_len = blocks / 2;
    p.key_bits = accounting::key_bits(p.codebook_size, blocks);
    if (p.key_bits < sec)
        throw std::invalid_argument("params: " + std::to_string(blocks) +
                                    " blocks hold only " + std::to_string(p.key_bits) +
                                    " key bits, below the " + std::to_string(sec) +
                                    "-bit target");
    return p;
}

ParamSet ParamSet::rm16() { return make(4, 53, 256, "rm16"); }

ParamSet ParamSet::rm32() { return make(5, 43, 256, "rm32"); }

ParamSet ParamSet::toy8() { return make(3, 3, 11, "toy8"); }

ParamSet ParamSet::custom(uint32_t log2_len, uint32_t blocks) {
    const uint32_t codebook_size = (1u << (log2_len + 1)) - 2;
    return make(log2_len, blocks, accounting::key_bits(codebook_size, blocks), "custom");
}

ParamSet ParamSet::preset(std::string_view name) {
    if (name == "rm16") return rm16();
    if (name == "rm32") return rm32();
    if (name == "toy8") return toy8();
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (expected rm16, rm32, or toy8)");
}

}  // namespace rkec
