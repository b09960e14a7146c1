#include "rkec/keygen.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

#include "rkec/errors.hpp"
#include "rkec/rng.hpp"

namespace rkec {

SelectionMap build_selection(const ParamSet& params, Rng& rng) {
    SelectionMap sel;
    sel.matrix = BitMatrix(params.message_len, params.input_len);
    sel.coord_map.resize(params.message_len);
    sel.punctured.resize(params.blocks);
    for (uint32_t b = 0; b < params.blocks; ++b) {
        const uint32_t base = b * params.block_len;
        const uint32_t drop = static_cast<uint32_t>(rng.below(params.block_len));
        sel.punctured[b] = base + drop;
        // The surviving block coordinates in ascending order.
        std::vector<uint32_t> surviving;
        surviving.reserve(params.code_len);
        for (uint32_t c = 0; c < params.block_len; ++c)
            if (c != drop) surviving.push_back(base + c);
        const std::vector<uint32_t> perm = rng.permutation(params.code_len);
        for (uint32_t r = 0; r < params.code_len; ++r) {
            const uint32_t out_row = b * params.code_len + r;
            sel.coord_map[out_row] = surviving[perm[r]];
            sel.matrix.set(out_row, sel.coord_map[out_row], true);
        }
    }
    return sel;
}

namespace {

// Block-diagonal permutation: one uniform permutation per block_size-wide block.
std::pair<BitMatrix, std::vector<uint32_t>> sample_block_perm(uint32_t message_len,
                                                              uint32_t block_size, Rng& rng) {
    BitMatrix m(message_len, message_len);
    std::vector<uint32_t> image(message_len);
    for (uint32_t base = 0; base < message_len; base += block_size) {
        const std::vector<uint32_t> perm = rng.permutation(block_size);
        for (uint32_t r = 0; r < block_size; ++r) {
            image[base + r] = base + perm[r];
            m.set(base + r, base + perm[r], true);
        }
    }
    return {std::move(m), std::move(image)};
}

}  // namespace

FactorPair build_factors(const FactorDims& dims, Rng& rng, uint32_t max_attempts) {
    if (dims.block_size == 0 || dims.message_len == 0 || dims.tail_len == 0)
        throw std::invalid_argument("build_factors: zero dimension");
    if (dims.message_len % dims.block_size != 0)
        throw std::invalid_argument("build_factors: message length not a multiple of block size");

    FactorPair out;
    BitMatrix left_tl_inv;
    bool found = false;
    for (uint32_t attempt = 0; attempt < max_attempts && !found; ++attempt) {
        auto [perm, image] = sample_block_perm(dims.message_len, dims.block_size, rng);
        BitMatrix tail_fold = BitMatrix::random(dims.message_len, dims.tail_len, rng);
        BitMatrix left_bl = BitMatrix::random(dims.tail_len, dims.message_len, rng);
        BitMatrix left_tl = perm ^ mul(tail_fold, left_bl);
        auto inv = invert(left_tl);
        if (!inv) continue;
        out.block_perm = std::move(perm);
        out.block_perm_image = std::move(image);
        out.tail_fold = std::move(tail_fold);
        out.left_bl = std::move(left_bl);
        out.left_tl = std::move(left_tl);
        left_tl_inv = std::move(*inv);
        found = true;
    }
    if (!found)
        throw ResampleExhausted("no invertible top-left factor in " +
                                std::to_string(max_attempts) + " attempts");

    out.left_br = BitMatrix::random(dims.tail_len, dims.tail_len, rng);

    found = false;
    for (uint32_t attempt = 0; attempt < max_attempts && !found; ++attempt) {
        BitMatrix cand = BitMatrix::random(dims.tail_len, dims.tail_len, rng);
        if (!invert(cand)) continue;
        out.discard_br = std::move(cand);
        found = true;
    }
    if (!found)
        throw ResampleExhausted("no invertible bottom-right trapdoor block in " +
                                std::to_string(max_attempts) + " attempts");

    out.left_tr = mul(out.tail_fold, out.left_br);
    out.discard_bl = mul(mul(out.discard_br, out.left_bl), left_tl_inv);
    out.discard_out = mul(out.discard_bl, out.left_tr) ^ mul(out.discard_br, out.left_br);
    return out;
}

std::vector<uint32_t> compose_coord_map(std::span<const uint32_t> block_perm_image,
                                        std::span<const uint32_t> selection_coord_map) {
    assert(block_perm_image.size() == selection_coord_map.size());
    std::vector<uint32_t> composite(block_perm_image.size());
    for (size_t i = 0; i < block_perm_image.size(); ++i)
        composite[i] = selection_coord_map[block_perm_image[i]];
    return composite;
}

TracedKeyPair generate_keypair_traced(const ParamSet& params, Rng& rng,
                                      const MaskConfig& masks) {
    if (!masks.full_input_mask && masks.input_count > params.input_len)
        throw std::invalid_argument("keygen: more input mask positions than coordinates");
    if (masks.output_count > params.message_len)
        throw std::invalid_argument("keygen: more output mask positions than coordinates");

    TracedKeyPair kp;
    kp.trace.selection = build_selection(params, rng);
    kp.trace.cover_rows = BitMatrix::random(params.tail_len, params.input_len, rng);
    kp.trace.factors = build_factors(
        {params.message_len, params.tail_len, params.code_len}, rng);
    const FactorPair& f = kp.trace.factors;

    const BitMatrix left =
        block2x2(f.left_tl, f.left_tr, f.left_bl, f.left_br);
    const BitMatrix stacked = vconcat(kp.trace.selection.matrix, kp.trace.cover_rows);

    std::vector<Labeling> labelings;
    labelings.reserve(params.blocks);
    for (uint32_t b = 0; b < params.blocks; ++b)
        labelings.push_back(Labeling::random(params.codebook_size, rng));

    std::vector<uint32_t> mask_in;
    if (masks.full_input_mask) {
        mask_in.resize(params.input_len);
        for (uint32_t i = 0; i < params.input_len; ++i) mask_in[i] = i;
    } else {
        mask_in = rng.sample_distinct(masks.input_count, params.input_len);
    }
    std::vector<uint32_t> mask_out = rng.sample_distinct(masks.output_count, params.message_len);

    kp.pub.params = params;
    kp.pub.matrix = mul(left, stacked);
    kp.pub.labelings = labelings;
    kp.pub.mask_in_positions = mask_in;
    kp.pub.mask_out_positions = mask_out;

    kp.priv.params = params;
    kp.priv.tail_fold = f.tail_fold;
    kp.priv.coord_map = compose_coord_map(f.block_perm_image, kp.trace.selection.coord_map);
    kp.priv.punctured = kp.trace.selection.punctured;
    kp.priv.labelings = std::move(labelings);
    kp.priv.mask_in_positions = std::move(mask_in);
    kp.priv.mask_out_positions = std::move(mask_out);
    return kp;
}

KeyPair generate_keypair(const ParamSet& params, Rng& rng, const MaskConfig& masks) {
    TracedKeyPair traced = generate_keypair_traced(params, rng, masks);
    return {std::move(traced.pub), std::move(traced.priv)};
}

}  // namespace rkec
