#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rkec {

// Injected randomness source. Everything in the library that needs random
// bits takes one of these; nothing reads ambient entropy. A (seed, stream)
// pair fully determines the output sequence, so independent streams can be
// derived from one master seed for parallel work.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream = 0);

    uint64_t next();
    bool bit();
    // Uniform in [0, n), n >= 1. Rejection sampled, no modulo bias.
    uint64_t below(uint64_t n);
    // Uniform in [0, 1) with 53 significant bits.
    double real();
    double exponential(double scale);
    double normal(double mean, double stddev);
    bool bernoulli(double p);

    // Uniform permutation of [0, n).
    std::vector<uint32_t> permutation(uint32_t n);
    // Uniform k-subset of [0, n), returned sorted ascending.
    std::vector<uint32_t> sample_distinct(uint32_t k, uint32_t n);

private:
    std::mt19937_64 engine_;
};

}  // namespace rkec
