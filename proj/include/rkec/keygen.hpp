#pragma once

// Key generation: a block-structured selection of the input coordinates, a
// random cover of extra rows, and a left factor whose trapdoor reduces the
// public matrix back to the per-block selection.

#include <cstdint>
#include <string>
#include <vector>

#include "rkec/bitmat.hpp"
#include "rkec/component_code.hpp"
#include "rkec/params.hpp"

namespace rkec {

class Rng;

// How many shared-randomness mask positions to draw: input-side positions
// live in [0, input_len), output-side in [0, message_len).
struct MaskConfig {
    uint32_t input_count = 0;
    uint32_t output_count = 0;
    bool full_input_mask = false;  // use every input position instead of input_count
};

struct PublicKey {
    ParamSet params;
    BitMatrix matrix;  // (message_len + tail_len) x input_len
    std::vector<Labeling> labelings;           // one per block
    std::vector<uint32_t> mask_in_positions;   // sorted subset of [0, input_len)
    std::vector<uint32_t> mask_out_positions;  // sorted subset of [0, message_len)
};

struct PrivateKey {
    ParamSet params;
    // Folds the ciphertext tail into the top rows during decapsulation:
    // u = ct[0:message_len) ^ tail_fold * ct[message_len:).
    BitMatrix tail_fold;  // message_len x tail_len
    // After the fold, output coordinate i carries input coordinate
    // coord_map[i].  Block-preserving and injective.
    std::vector<uint32_t> coord_map;
    // Per block: the one input coordinate its selection dropped.
    std::vector<uint32_t> punctured;
    std::vector<Labeling> labelings;
    std::vector<uint32_t> mask_in_positions;
    std::vector<uint32_t> mask_out_positions;
};

// The per-block selection: matrix rows pick one input coordinate each,
// coord_map lists the picks, punctured lists the dropped coordinate of each
// block.
struct SelectionMap {
    BitMatrix matrix;  // message_len x input_len, block-diagonal
    std::vector<uint32_t> coord_map;
    std::vector<uint32_t> punctured;
};

// Shapes for the factor construction; message_len must be a multiple of
// block_size (the per-block permutation width).
struct FactorDims {
    uint32_t message_len = 0;
    uint32_t tail_len = 0;
    uint32_t block_size = 0;
};

// Left factor L = [[left_tl, left_tr], [left_bl, left_br]] together with the
// trapdoor blocks making T = [[I, tail_fold], [discard_bl, discard_br]]
// satisfy T*L = blockdiag(block_perm, discard_out).
struct FactorPair {
    BitMatrix left_tl, left_tr, left_bl, left_br;
    BitMatrix tail_fold;    // message_len x tail_len
    BitMatrix discard_bl;   // tail_len x message_len
    BitMatrix discard_br;   // tail_len x tail_len, invertible
    BitMatrix block_perm;   // message_len x message_len, block-diagonal permutation
    std::vector<uint32_t> block_perm_image;  // row i carries its 1 at this column
    BitMatrix discard_out;  // tail_len x tail_len
};

// Test-only record of everything keygen sampled or derived.
struct KeygenTrace {
    SelectionMap selection;
    BitMatrix cover_rows;  // tail_len x input_len, uniform
    FactorPair factors;
};

struct KeyPair {
    PublicKey pub;
    PrivateKey priv;
};

struct TracedKeyPair {
    PublicKey pub;
    PrivateKey priv;
    KeygenTrace trace;
};

SelectionMap build_selection(const ParamSet& params, Rng& rng);

// Resamples (block_perm, tail_fold, left_bl) jointly until the derived
// left_tl is invertible, then the bottom-right trapdoor block until it is
// invertible; throws ResampleExhausted past max_attempts for either loop.
FactorPair build_factors(const FactorDims& dims, Rng& rng, uint32_t max_attempts = 64);

KeyPair generate_keypair(const ParamSet& params, Rng& rng, const MaskConfig& masks);
TracedKeyPair generate_keypair_traced(const ParamSet& params, Rng& rng,
                                      const MaskConfig& masks);

// The composite map realized by block_perm * selection, as assembled by
// keygen into the private key.
std::vector<uint32_t> compose_coord_map(std::span<const uint32_t> block_perm_image,
                                        std::span<const uint32_t> selection_coord_map);

}  // namespace rkec
