#pragma once

// Looped round-trip-time simulator and the end-to-end consolidation
// experiment.  Two nodes bounce packets through a loop whose inner segments
// contribute an identical delay sum to both endpoints; each endpoint adds
// its own measurement noise, thresholds at its own empirical mean, and the
// resulting bit strings disagree at some rate.  The experiment feeds such
// disagreements through full encapsulation/decapsulation and reports block
// and key error rates.

#include <cstdint>
#include <vector>

#include "rkec/bitmat.hpp"
#include "rkec/params.hpp"

namespace rkec {

enum class JitterFamily {
    exponential,       // heavy right tail, the queueing default
    truncated_normal,  // effectively symmetric: located well away from zero
};

struct DelayModel {
    uint32_t loop_count = 4;    // hops in the loop; 2*loop_count - 2 shared segments
    uint32_t packet_count = 1000;
    double base_delay = 10.0;   // fixed per-segment propagation time
    JitterFamily jitter_family = JitterFamily::exponential;
    double jitter_scale = 1.0;          // per-segment jitter scale (0 disables)
    double private_noise_scale = 0.1;   // per-endpoint measurement noise (0 disables)
};

struct RttSamples {
    std::vector<double> shared;  // the delay sum both endpoints observe
    std::vector<double> rtt_a;
    std::vector<double> rtt_b;
};

struct BitExtract {
    BitVector bits_a;
    BitVector bits_b;
    double disagreement_rate = 0.0;
};

struct ExchangeResult {
    RttSamples samples;
    BitExtract bits;
};

// Deterministic under the seed; packets are drawn in fixed-size chunks with
// one generator stream per chunk, so any future parallel split reproduces
// the sequential output.  Throws when the model has zero total variance or
// fewer than 2 packets or hops.
ExchangeResult simulate_exchange(const DelayModel& model, uint64_t seed);

struct ConsolidationConfig {
    ParamSet params;
    double epsilon = 0.0;        // i.i.d. per-position disagreement rate
    uint64_t trials = 1000;      // encapsulation/decapsulation runs
    uint32_t injected_weight = 0;
    uint32_t trials_per_key = 48;  // fresh keypair every this many trials
    uint32_t threads = 1;
};

struct CurveRow {
    double epsilon = 0.0;
    double block_error_rate = 0.0;
    double key_failure_rate = 0.0;
    uint64_t trials = 0;
    uint64_t blocks = 0;
};

// Full-mask configuration: every input coordinate carries a shared-
// randomness bit, the sender masks with its copy, the receiver unmasks with
// a copy flipped i.i.d. at rate epsilon.  Chunk k of trials_per_key trials
// runs on generator stream k, so thread splits merge bit-identically.
CurveRow consolidation_experiment(const ConsolidationConfig& config, uint64_t seed);

}  // namespace rkec
