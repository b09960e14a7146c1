#pragma once

// First-order Reed-Muller component codes: codebook enumeration, public
// symbol labelings, and brute-force minimum-distance decoding that tolerates
// one punctured coordinate.

#include <cstdint>
#include <span>
#include <vector>

#include "rkec/bitmat.hpp"

namespace rkec {

class Rng;

// All affine words of length n = 2^log2_len with the all-zeros and all-ones
// words removed.  Every remaining word is balanced (weight n/2) and any two
// differ in at least n/2 coordinates, so after dropping one coordinate the
// minimum distance is still n/2 - 1 and up to correctable() substitution
// errors decode uniquely.
class Codebook {
public:
    explicit Codebook(uint32_t log2_len);

    uint32_t log2_len() const { return log2_len_; }
    uint32_t length() const { return length_; }                      // n
    uint32_t size() const { return static_cast<uint32_t>(words_.size()); }  // usable words
    uint32_t correctable() const { return correctable_; }            // t
    const BitVector& word(uint32_t index) const { return words_[index]; }

    struct Decoded {
        uint32_t index;
        uint32_t distance;
    };
    // Minimum-distance decode restricted to the codeword coordinates listed
    // in `coords` (either all n or all but one); observed.get(k) is the bit
    // received for coordinate coords[k].  Throws DecodeFailure when the best
    // distance exceeds correctable() or is attained by more than one word.
    Decoded decode(std::span<const uint32_t> coords, const BitVector& observed) const;

private:
    uint32_t log2_len_ = 0;
    uint32_t length_ = 0;
    uint32_t correctable_ = 0;
    std::vector<BitVector> words_;
};

// Public bijection between key symbols and codeword indices.
struct Labeling {
    std::vector<uint16_t> forward;  // symbol -> codeword index
    std::vector<uint16_t> inverse;  // codeword index -> symbol

    static Labeling random(uint32_t count, Rng& rng);
    // Validates that fwd is a permutation of [0, fwd.size()).
    static Labeling from_forward(std::vector<uint16_t> fwd);

    bool operator==(const Labeling&) const = default;
};

}  // namespace rkec
