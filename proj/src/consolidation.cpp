#include "rkec/consolidation.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "rkec/kem.hpp"
#include "rkec/keygen.hpp"
#include "rkec/rng.hpp"

namespace rkec {

namespace {

constexpr uint32_t kPacketChunk = 4096;
// Truncated-normal draws sit this many scale units above zero, so the
// clipped mass is negligible and the distribution is symmetric in practice.
constexpr double kNormalLocationFactor = 6.0;

double draw_jitter(JitterFamily family, double scale, Rng& rng) {
    if (scale <= 0.0) return 0.0;
    switch (family) {
        case JitterFamily::exponential:
            return rng.exponential(scale);
        case JitterFamily::truncated_normal:
            return std::max(0.0, rng.normal(kNormalLocationFactor * scale, scale));
    }
    return 0.0;
}

double draw_private(double scale, Rng& rng) {
    if (scale <= 0.0) return 0.0;
    return std::max(0.0, rng.normal(kNormalLocationFactor * scale, scale));
}

}  // namespace

ExchangeResult simulate_exchange(const DelayModel& model, uint64_t seed) {
    if (model.loop_count < 2)
        throw std::invalid_argument("delay model needs at least 2 hops");
    if (model.packet_count < 2)
        throw std::invalid_argument("delay model needs at least 2 packets");
    if (model.jitter_scale < 0.0 || model.private_noise_scale < 0.0 || model.base_delay < 0.0)
        throw std::invalid_argument("delay model scales must be non-negative");
    if (model.jitter_scale == 0.0 && model.private_noise_scale == 0.0)
        throw std::invalid_argument("delay model has zero variance");

    const uint32_t segments = 2 * model.loop_count - 2;
    ExchangeResult res;
    res.samples.shared.resize(model.packet_count);
    res.samples.rtt_a.resize(model.packet_count);
    res.samples.rtt_b.resize(model.packet_count);

    for (uint32_t start = 0; start < model.packet_count; start += kPacketChunk) {
        Rng rng(seed, start / kPacketChunk);
        const uint32_t end = std::min(model.packet_count, start + kPacketChunk);
        for (uint32_t i = start; i < end; ++i) {
            double shared = 0.0;
            for (uint32_t s = 0; s < segments; ++s)
                shared += model.base_delay + draw_jitter(model.jitter_family,
                                                         model.jitter_scale, rng);
            res.samples.shared[i] = shared;
            res.samples.rtt_a[i] = shared + draw_private(model.private_noise_scale, rng);
            res.samples.rtt_b[i] = shared + draw_private(model.private_noise_scale, rng);
        }
    }

    auto mean = [](const std::vector<double>& v) {
        double sum = 0.0;
        for (double x : v) sum += x;
        return sum / static_cast<double>(v.size());
    };
    const double mean_a = mean(res.samples.rtt_a);
    const double mean_b = mean(res.samples.rtt_b);

    res.bits.bits_a = BitVector(model.packet_count);
    res.bits.bits_b = BitVector(model.packet_count);
    uint32_t disagreements = 0;
    for (uint32_t i = 0; i < model.packet_count; ++i) {
        const bool a = res.samples.rtt_a[i] > mean_a;
        const bool b = res.samples.rtt_b[i] > mean_b;
        res.bits.bits_a.set(i, a);
        res.bits.bits_b.set(i, b);
        disagreements += a != b;
    }
    res.bits.disagreement_rate =
        static_cast<double>(disagreements) / static_cast<double>(model.packet_count);
    return res;
}

namespace {

struct ChunkTally {
    uint64_t block_errors = 0;
    uint64_t key_failures = 0;
    uint64_t trials = 0;
};

ChunkTally run_chunk(const ConsolidationConfig& cfg, uint64_t seed, uint64_t chunk_index,
                     uint64_t trial_count) {
    Rng rng(seed, chunk_index);
    const MaskConfig masks{.input_count = 0, .output_count = 0, .full_input_mask = true};
    const KeyPair kp = generate_keypair(cfg.params, rng, masks);

    ChunkTally tally;
    for (uint64_t t = 0; t < trial_count; ++t) {
        const SharedKey key = random_shared_key(cfg.params, rng);
        CommonRandomnessView sender = random_randomness(kp.pub, rng);
        const EncapResult enc =
            encapsulate(kp.pub, key, rng, sender, ErrorBudget{cfg.injected_weight});

        CommonRandomnessView receiver = sender;
        for (uint32_t k = 0; k < receiver.bits_in.size(); ++k)
            if (rng.bernoulli(cfg.epsilon)) receiver.bits_in.flip(k);
        for (uint32_t k = 0; k < receiver.bits_out.size(); ++k)
            if (rng.bernoulli(cfg.epsilon)) receiver.bits_out.flip(k);

        const auto decoded = decapsulate_blocks(kp.priv, enc.ct, receiver);
        uint32_t bad = 0;
        for (uint32_t b = 0; b < cfg.params.blocks; ++b)
            if (!decoded[b] || *decoded[b] != key.symbols[b]) ++bad;
        tally.block_errors += bad;
        tally.key_failures += bad > 0;
        ++tally.trials;
    }
    return tally;
}

}  // namespace

CurveRow consolidation_experiment(const ConsolidationConfig& cfg, uint64_t seed) {
    if (cfg.epsilon < 0.0 || cfg.epsilon > 1.0)
        throw std::invalid_argument("disagreement rate must lie in [0, 1]");
    if (cfg.injected_weight > cfg.params.correctable)
        throw std::invalid_argument("injected weight exceeds the correction radius");
    if (cfg.trials == 0) throw std::invalid_argument("need at least one trial");
    const uint32_t per_key = cfg.trials_per_key == 0 ? 1 : cfg.trials_per_key;
    const uint64_t chunk_count = (cfg.trials + per_key - 1) / per_key;

    std::vector<ChunkTally> tallies(chunk_count);
    auto chunk_trials = [&](uint64_t c) {
        const uint64_t begin = c * per_key;
        return std::min<uint64_t>(per_key, cfg.trials - begin);
    };

    const uint32_t threads = std::max<uint32_t>(1, cfg.threads);
    if (threads == 1 || chunk_count == 1) {
        for (uint64_t c = 0; c < chunk_count; ++c)
            tallies[c] = run_chunk(cfg, seed, c, chunk_trials(c));
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (uint32_t w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (uint64_t c = w; c < chunk_count; c += threads)
                    tallies[c] = run_chunk(cfg, seed, c, chunk_trials(c));
            });
        }
        for (auto& th : pool) th.join();
    }

    ChunkTally total;
    for (const ChunkTally& t : tallies) {
        total.block_errors += t.block_errors;
        total.key_failures += t.key_failures;
        total.trials += t.trials;
    }

    CurveRow row;
    row.epsilon = cfg.epsilon;
    row.trials = total.trials;
    row.blocks = total.trials * cfg.params.blocks;
    row.block_error_rate =
        static_cast<double>(total.block_errors) / static_cast<double>(row.blocks);
    row.key_failure_rate =
        static_cast<double>(total.key_failures) / static_cast<double>(row.trials);
    return row;
}

}  // namespace rkec
