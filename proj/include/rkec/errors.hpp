#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rkec {

// Component decoder could not identify a unique codeword within the
// correction radius.
struct DecodeFailure : std::runtime_error {
    explicit DecodeFailure(const std::string& what) : std::runtime_error(what) {}
};

// Decapsulation could not recover a key; failed_blocks lists the component
// codes that would not decode (empty when the value was out of range).
struct DecapFailure : std::runtime_error {
    std::vector<uint32_t> failed_blocks;

    explicit DecapFailure(const std::string& what, std::vector<uint32_t> blocks = {})
        : std::runtime_error(what), failed_blocks(std::move(blocks)) {}
};

// Randomized key generation failed to hit an invertible factor within the
// attempt budget.
struct ResampleExhausted : std::runtime_error {
    explicit ResampleExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Serialized object is truncated, has a bad magic tag, or violates a
// structural invariant of its format.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rkec
