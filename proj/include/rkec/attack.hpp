#pragma once

// Toy-scale exhaustive attack: enumerate every codeword tuple, marginalize
// the bits the attacker cannot see (pad bits and shared-randomness masks),
// and accept a candidate when some in-budget error pattern explains the
// residual.  Only runs at parameter sizes small enough to enumerate.

#include <cstdint>
#include <span>
#include <vector>

#include "rkec/kem.hpp"
#include "rkec/keygen.hpp"

namespace rkec {

struct AttackResult {
    std::vector<uint32_t> recovered_symbols;  // first accepted tuple
    uint64_t candidates_tested = 0;           // always the full tuple space
    uint64_t accepted_count = 0;
    bool unique = false;
    bool true_key_accepted = false;  // only meaningful when true_symbols given
};

// budget_total is the public per-block error weight the sender used.
// true_symbols, when non-empty, is used solely to report membership of the
// real key in the acceptance set; it never guides the search.
AttackResult exhaustive_attack(const PublicKey& pk, const Ciphertext& ct,
                               uint32_t budget_total,
                               std::span<const uint32_t> true_symbols = {});

}  // namespace rkec
