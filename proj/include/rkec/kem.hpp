#pragma once

// Encapsulation and decapsulation.  The sender spreads a key over one
// codeword per block plus a random pad bit, adds per-block input/output
// errors and the shared-randomness masks, and multiplies by the public
// matrix; the receiver folds the tail, removes its own mask copy, pulls each
// block back through the private coordinate map and decodes.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rkec/bignum.hpp"
#include "rkec/bitmat.hpp"
#include "rkec/keygen.hpp"
#include "rkec/params.hpp"

namespace rkec {

class Rng;

// A key as both an integer and its little-endian radix-codebook_size digits.
struct SharedKey {
    BigUint value;
    std::vector<uint32_t> symbols;

    // Lowercase hex, most-significant nibble first, padded to the width of
    // the instance's security exponent.
    std::string hex(const ParamSet& params) const;
};

std::vector<uint32_t> key_to_symbols(const BigUint& value, const ParamSet& params);
BigUint symbols_to_key(std::span<const uint32_t> symbols, const ParamSet& params);

// Validates value < 2^sec and derives the digits.
SharedKey make_shared_key(BigUint value, const ParamSet& params);
// Validates digit count and range only; the integer may use the full digit
// space, which honest encapsulation never does.
SharedKey shared_key_from_symbols(std::span<const uint32_t> symbols, const ParamSet& params);
// Uniform value below 2^sec.
SharedKey random_shared_key(const ParamSet& params, Rng& rng);

// One party's copy of the shared-randomness bits, ordered to match the
// key's mask position lists.
struct CommonRandomnessView {
    BitVector bits_in;
    BitVector bits_out;
};

CommonRandomnessView empty_randomness();
CommonRandomnessView random_randomness(const PublicKey& pk, Rng& rng);

struct ErrorBudget {
    uint32_t total = 0;  // per-block input + output error weight
};

struct Ciphertext {
    BitVector bits;  // length message_len + tail_len
};

struct BlockWeights {
    uint32_t input_weight = 0;
    uint32_t output_weight = 0;
};

// Test-only record of everything the encapsulator sampled.
struct EncapsulationTrace {
    BitVector code_vec;       // input_len: codewords plus pads
    BitVector input_errors;   // input_len
    BitVector output_errors;  // message_len + tail_len, tail all zero
    BitVector mask_in_vec;    // input_len
    BitVector mask_out_vec;   // message_len + tail_len, tail all zero
    std::vector<BlockWeights> weights;
    std::vector<uint32_t> symbols;
};

struct EncapResult {
    Ciphertext ct;
    EncapsulationTrace trace;
};

// Per block: a uniform split of budget.total between input-side errors
// (anywhere in the block's input coordinates, pad included) and output-side
// errors (within the block's top output coordinates).
EncapResult encapsulate(const PublicKey& pk, const SharedKey& key, Rng& rng,
                        const CommonRandomnessView& cr, const ErrorBudget& budget);

// Per-block decode outcomes; disengaged entries mark failed blocks.
std::vector<std::optional<uint32_t>> decapsulate_blocks(const PrivateKey& sk,
                                                        const Ciphertext& ct,
                                                        const CommonRandomnessView& cr);

// Throws DecapFailure (carrying the failed block list) when any block fails
// or the reassembled value falls outside [0, 2^sec).
SharedKey decapsulate(const PrivateKey& sk, const Ciphertext& ct,
                      const CommonRandomnessView& cr);

}  // namespace rkec
