#include "rkec/component_code.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>
#include <string>

#include "rkec/errors.hpp"
#include "rkec/rng.hpp"

namespace rkec {

Codebook::Codebook(uint32_t log2_len) : log2_len_(log2_len) {
    if (log2_len < 3 || log2_len > 6)
        throw std::invalid_argument("codebook: log2 length " + std::to_string(log2_len) +
                                    " outside supported range [3, 6]");
    length_ = 1u << log2_len;
    correctable_ = (1u << (log2_len - 2)) - 1;
    const uint32_t count = (1u << (log2_len + 1)) - 2;
    words_.reserve(count);
    // Word k evaluates the affine function <mask, x> ^ invert over all points
    // x; mask = 0 would give the two constant words, which are excluded.
    for (uint32_t k = 0; k < count; ++k) {
        const uint32_t mask = k / 2 + 1;
        const bool invert = k & 1;
        BitVector w(length_);
        for (uint32_t x = 0; x < length_; ++x) {
            const bool bit = ((std::popcount(x & mask) & 1) != 0) != invert;
            w.set(x, bit);
        }
        words_.push_back(std::move(w));
    }
}

Codebook::Decoded Codebook::decode(std::span<const uint32_t> coords,
                                   const BitVector& observed) const {
    assert(observed.size() == coords.size());
    assert(coords.size() == length_ || coords.size() == length_ - 1);
    uint32_t best = UINT32_MAX;
    uint32_t best_index = 0;
    bool tied = false;
    for (uint32_t k = 0; k < words_.size(); ++k) {
        const BitVector& w = words_[k];
        uint32_t dist = 0;
        for (size_t j = 0; j < coords.size(); ++j)
            dist += w.get(coords[j]) != observed.get(static_cast<uint32_t>(j));
        if (dist < best) {
            best = dist;
            best_index = k;
            tied = false;
        } else if (dist == best) {
            tied = true;
        }
    }
    if (best > correctable_)
        throw DecodeFailure("best distance " + std::to_string(best) +
                            " exceeds correction radius " + std::to_string(correctable_));
    if (tied)
        throw DecodeFailure("ambiguous block: multiple words at distance " +
                            std::to_string(best));
    return {best_index, best};
}

Labeling Labeling::random(uint32_t count, Rng& rng) {
    const std::vector<uint32_t> perm = rng.permutation(count);
    Labeling lab;
    lab.forward.resize(count);
    lab.inverse.resize(count);
    for (uint32_t s = 0; s < count; ++s) {
        lab.forward[s] = static_cast<uint16_t>(perm[s]);
        lab.inverse[perm[s]] = static_cast<uint16_t>(s);
    }
    return lab;
}

Labeling Labeling::from_forward(std::vector<uint16_t> fwd) {
    Labeling lab;
    lab.inverse.assign(fwd.size(), 0);
    std::vector<bool> seen(fwd.size(), false);
    for (size_t s = 0; s < fwd.size(); ++s) {
        const uint16_t idx = fwd[s];
        if (idx >= fwd.size() || seen[idx])
            throw FormatError("labeling is not a permutation");
        seen[idx] = true;
        lab.inverse[idx] = static_cast<uint16_t>(s);
    }
    lab.forward = std::move(fwd);
    return lab;
}

}  // namespace rkec
