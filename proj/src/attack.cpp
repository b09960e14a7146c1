#include "rkec/attack.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "rkec/component_code.hpp"

namespace rkec {

namespace {

constexpr uint64_t kMaxCandidates = 1ull << 20;
constexpr uint32_t kMaxFreeBits = 20;

struct BlockPattern {
    uint32_t input_weight;
    BitVector image;  // public-matrix image of this input-error pattern
};

}  // namespace

AttackResult exhaustive_attack(const PublicKey& pk, const Ciphertext& ct,
                               uint32_t budget_total,
                               std::span<const uint32_t> true_symbols) {
    const ParamSet& prm = pk.params;
    if (budget_total > prm.correctable)
        throw std::invalid_argument("attack: budget exceeds correction radius");
    if (ct.bits.size() != prm.message_len + prm.tail_len)
        throw std::invalid_argument("attack: ciphertext length mismatch");

    uint64_t tuple_space = 1;
    for (uint32_t b = 0; b < prm.blocks; ++b) {
        tuple_space *= prm.codebook_size;
        if (tuple_space > kMaxCandidates)
            throw std::invalid_argument("attack: tuple space exceeds the toy guard");
    }

    // Input coordinates whose value the attacker cannot see: the per-block
    // pad bit plus every input-side mask position.
    std::vector<uint32_t> free_coords;
    for (uint32_t b = 0; b < prm.blocks; ++b)
        free_coords.push_back(b * prm.block_len + prm.code_len);
    free_coords.insert(free_coords.end(), pk.mask_in_positions.begin(),
                       pk.mask_in_positions.end());
    std::sort(free_coords.begin(), free_coords.end());
    free_coords.erase(std::unique(free_coords.begin(), free_coords.end()), free_coords.end());
    if (free_coords.size() > kMaxFreeBits)
        throw std::invalid_argument("attack: too many unknown bits to marginalize");

    const Codebook book(prm.log2_len);
    const uint32_t out_len = prm.message_len + prm.tail_len;

    std::vector<BitVector> columns(prm.input_len);
    for (uint32_t c = 0; c < prm.input_len; ++c) columns[c] = pk.matrix.column(c);

    // Image of every codeword choice per block (pads treated as zero here).
    std::vector<std::vector<BitVector>> word_image(prm.blocks);
    for (uint32_t b = 0; b < prm.blocks; ++b) {
        word_image[b].reserve(prm.codebook_size);
        for (uint32_t sym = 0; sym < prm.codebook_size; ++sym) {
            const BitVector& w = book.word(pk.labelings[b].forward[sym]);
            BitVector img(out_len);
            for (uint32_t c = 0; c < prm.code_len; ++c)
                if (w.get(c)) img ^= columns[b * prm.block_len + c];
            word_image[b].push_back(std::move(img));
        }
    }

    // Every in-budget input-error pattern of each block, with its image.
    std::vector<std::vector<BlockPattern>> patterns(prm.blocks);
    for (uint32_t b = 0; b < prm.blocks; ++b) {
        for (uint32_t mask = 0; mask < (1u << prm.block_len); ++mask) {
            const auto weight = static_cast<uint32_t>(std::popcount(mask));
            if (weight > budget_total) continue;
            BitVector img(out_len);
            for (uint32_t c = 0; c < prm.block_len; ++c)
                if (mask & (1u << c)) img ^= columns[b * prm.block_len + c];
            patterns[b].push_back({weight, std::move(img)});
        }
    }

    // Output-side mask capacity per block.
    std::vector<uint32_t> out_mask_cap(prm.blocks, 0);
    for (uint32_t pos : pk.mask_out_positions) out_mask_cap[pos / prm.code_len]++;

    // A residual is explainable when the tail is clean and every block's
    // weight can be brought to exactly the output-error share of the budget
    // by flipping output-mask positions.
    auto explainable = [&](const BitVector& y, const std::vector<uint32_t>& in_weights) {
        for (uint32_t i = prm.message_len; i < out_len; ++i)
            if (y.get(i)) return false;
        for (uint32_t b = 0; b < prm.blocks; ++b) {
            uint32_t h = 0, at_mask = 0;
            for (uint32_t r = 0; r < prm.code_len; ++r)
                if (y.get(b * prm.code_len + r)) ++h;
            for (uint32_t pos : pk.mask_out_positions)
                if (pos / prm.code_len == b && y.get(pos)) ++at_mask;
            const uint32_t want = budget_total - in_weights[b];
            const uint32_t low = h - at_mask;
            const uint32_t high = h + out_mask_cap[b] - at_mask;
            if (want < low || want > high) return false;
        }
        return true;
    };

    // Depth-first over per-block error patterns, with the running residual
    // kept per level.
    std::vector<uint32_t> in_weights(prm.blocks, 0);
    std::vector<BitVector> residual_stack(prm.blocks + 1);
    auto pattern_search = [&](const BitVector& start) {
        residual_stack[0] = start;
        uint32_t depth = 0;
        std::vector<uint32_t> cursor(prm.blocks, 0);
        while (true) {
            if (cursor[depth] < patterns[depth].size()) {
                const BlockPattern& pat = patterns[depth][cursor[depth]];
                in_weights[depth] = pat.input_weight;
                residual_stack[depth + 1] = residual_stack[depth];
                residual_stack[depth + 1] ^= pat.image;
                if (depth + 1 == prm.blocks) {
                    if (explainable(residual_stack[depth + 1], in_weights)) return true;
                    ++cursor[depth];
                } else {
                    ++depth;
                    cursor[depth] = 0;
                }
            } else {
                if (depth == 0) return false;
                --depth;
                ++cursor[depth];
            }
        }
    };

    AttackResult result;
    result.candidates_tested = tuple_space;

    std::vector<uint32_t> symbols(prm.blocks, 0);
    for (uint64_t tuple = 0; tuple < tuple_space; ++tuple) {
        uint64_t rest = tuple;
        BitVector base = ct.bits;
        for (uint32_t b = 0; b < prm.blocks; ++b) {
            symbols[b] = static_cast<uint32_t>(rest % prm.codebook_size);
            rest /= prm.codebook_size;
            base ^= word_image[b][symbols[b]];
        }

        bool accepted = false;
        // Gray-code walk over the unknown-bit subsets.
        BitVector residual = base;
        uint64_t gray = 0;
        const uint64_t subsets = 1ull << free_coords.size();
        for (uint64_t k = 0; k < subsets; ++k) {
            if (k > 0) {
                const uint64_t next = k ^ (k >> 1);
                const uint64_t changed = gray ^ next;
                residual ^= columns[free_coords[std::countr_zero(changed)]];
                gray = next;
            }
            if (pattern_search(residual)) {
                accepted = true;
                break;
            }
        }

        if (accepted) {
            ++result.accepted_count;
            if (result.accepted_count == 1) result.recovered_symbols = symbols;
            if (!true_symbols.empty() &&
                std::equal(true_symbols.begin(), true_symbols.end(), symbols.begin(),
                           symbols.end()))
                result.true_key_accepted = true;
        }
    }
    result.unique = result.accepted_count == 1;
    return result;
}

}  // namespace rkec
