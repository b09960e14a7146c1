#pragma once

// Closed-form size and work-factor arithmetic for a scheme instance plus the
// classical code-based reference point it is compared against.  All counting
// is done in exact integer arithmetic; logarithms are taken last.

#include <cstdint>

namespace rkec {

struct ParamSet;

struct SecurityReport {
    uint32_t blocks = 0;
    uint32_t key_bits = 0;
    uint64_t public_key_bits = 0;
    double error_search_log2 = 0.0;  // exhaustive error-pattern search work
    double key_search_log2 = 0.0;    // exhaustive codeword-tuple search work
    double labeling_log2_per_block = 0.0;
    double labeling_log2_total = 0.0;
    uint64_t mceliece_pk_bits = 0;   // classical reference key size
};

namespace accounting {

// Classical binary-Goppa reference system whose systematic public key is
// compared against ours in analyze reports.
inline constexpr uint32_t kMcelieceRefLen = 6624;
inline constexpr uint32_t kMcelieceRefDim = 5129;

// Smallest number of component codes whose joint symbol space covers 2^sec.
uint32_t component_count(uint32_t sec, uint64_t codebook_size);

// floor(log2(codebook_size^blocks)): usable key bits of a symbol tuple.
uint32_t key_bits(uint64_t codebook_size, uint32_t blocks);

// (message_len + tail_len) * input_len.
uint64_t public_key_bits(const ParamSet& params);

// blocks * log2(C(searched_len, correctable)): work to enumerate error
// patterns of the decoding budget over every block.
double error_search_log2(uint32_t blocks, uint32_t searched_len, uint32_t correctable);

// blocks * log2(codebook_size): work to enumerate all codeword tuples.
double key_search_log2(uint64_t codebook_size, uint32_t blocks);

// log2( n! / ((n/2)! * (n/2 - 1)!) ): hidden choices of one punctured
// coordinate plus a balanced relabeling, per block.  Supported for even
// n <= 40 (exact 64-bit factorials in the divisor).
double labeling_log2(uint32_t code_len);

// Systematic-generator key size k(n-k) of a classical code-based system.
uint64_t mceliece_pk_bits(uint64_t code_len, uint64_t dimension);

SecurityReport security_report(const ParamSet& params);

}  // namespace accounting
}  // namespace rkec
