#include "rkec/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rkec {

namespace {

uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    uint64_t s = seed;
    (void)splitmix64(s);
    s ^= 0x2545f4914f6cdd1dull * (stream + 1);
    return splitmix64(s);
}

}  // namespace

Rng::Rng(uint64_t seed, uint64_t stream) : engine_(mix_seed(seed, stream)) {}

uint64_t Rng::next() {
    return engine_();
}

bool Rng::bit() {
    return next() & 1u;
}

uint64_t Rng::below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be >= 1");
    if (n == 1) return 0;
    const uint64_t rem = (0 - n) % n;  // 2^64 mod n
    const uint64_t limit = UINT64_MAX - rem;
    uint64_t x;
    do {
        x = next();
    } while (x > limit);
    return x % n;
}

double Rng::real() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::exponential(double scale) {
    if (scale <= 0.0) return 0.0;
    return -scale * std::log(1.0 - real());
}

double Rng::normal(double mean, double stddev) {
    if (stddev <= 0.0) return mean;
    const double u1 = 1.0 - real();  // (0, 1]
    const double u2 = real();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * mag * std::cos(2.0 * std::numbers::pi * u2);
}

bool Rng::bernoulli(double p) {
    return real() < p;
}

std::vector<uint32_t> Rng::permutation(uint32_t n) {
    std::vector<uint32_t> perm(n);
    for (uint32_t i = 0; i < n; ++i) perm[i] = i;
    for (uint32_t i = n; i > 1; --i) {
        const auto j = static_cast<uint32_t>(below(i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

std::vector<uint32_t> Rng::sample_distinct(uint32_t k, uint32_t n) {
    if (k > n) throw std::invalid_argument("Rng::sample_distinct: k > n");
    std::vector<uint32_t> out;
    out.reserve(k);
    if (k == n) {
        for (uint32_t i = 0; i < n; ++i) out.push_back(i);
        return out;
    }
    // Floyd's algorithm, then sort for a canonical order.
    for (uint32_t i = n - k; i < n; ++i) {
        const auto j = static_cast<uint32_t>(below(i + 1));
        if (std::find(out.begin(), out.end(), j) != out.end()) {
            out.push_back(i);
        } else {
            out.push_back(j);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace rkec
