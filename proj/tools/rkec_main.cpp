// Command-line front door: key generation, encapsulation, decapsulation,
// size/work accounting, delay simulation, and the toy attack.

#include <cinttypes>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rkec/accounting.hpp"
#include "rkec/attack.hpp"
#include "rkec/consolidation.hpp"
#include "rkec/errors.hpp"
#include "rkec/kem.hpp"
#include "rkec/keygen.hpp"
#include "rkec/keyio.hpp"
#include "rkec/params.hpp"
#include "rkec/rng.hpp"

namespace {

using nlohmann::json;

// Generator stream assignments, fixed for reproducibility:
//   keygen, analyze-free subcommands: stream 0 of the given seed
//   encap: stream 0 (its own seed)
//   attack instance: stream 0 for keygen, stream 1 for key + encapsulation
//   simulate rtt: one stream per packet chunk (see simulate_exchange)
//   simulate consolidation: one stream per trial chunk; sweep point i runs
//   with seed + i.
constexpr uint64_t kAttackEncapStream = 1;

uint64_t resolve_seed(std::optional<uint64_t> given) {
    if (given) return *given;
    std::random_device rd;
    return (static_cast<uint64_t>(rd()) << 32) ^ rd();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

struct SweepRange {
    double lo = 0.0, hi = 0.0;
    uint32_t steps = 1;
};

SweepRange parse_sweep(const std::string& text) {
    SweepRange r;
    if (std::sscanf(text.c_str(), "%lf:%lf:%u", &r.lo, &r.hi, &r.steps) != 3 || r.steps < 1 ||
        r.lo < 0.0 || r.hi < r.lo || r.hi > 1.0)
        throw std::invalid_argument("bad sweep '" + text + "', expected lo:hi:steps");
    return r;
}

int run_keygen(const std::string& preset, std::optional<uint64_t> seed_opt,
               const std::string& out_pub, const std::string& out_priv, uint32_t cr_in,
               uint32_t cr_out, bool cr_full, bool as_json) {
    const rkec::ParamSet params = rkec::ParamSet::preset(preset);
    const uint64_t seed = resolve_seed(seed_opt);
    rkec::Rng rng(seed, 0);
    const rkec::MaskConfig masks{cr_in, cr_out, cr_full};
    const rkec::KeyPair kp = rkec::generate_keypair(params, rng, masks);
    rkec::save_public_key_file(out_pub, kp.pub);
    rkec::save_private_key_file(out_priv, kp.priv);
    if (as_json) {
        json j{{"seed", seed},
               {"preset", preset},
               {"public_key", out_pub},
               {"private_key", out_priv},
               {"mask_in_count", kp.pub.mask_in_positions.size()},
               {"mask_out_count", kp.pub.mask_out_positions.size()}};
        std::printf("%s\n", j.dump().c_str());
    } else {
        std::printf("seed: %" PRIu64 "\n", seed);
        std::printf("public key:  %s\n", out_pub.c_str());
        std::printf("private key: %s\n", out_priv.c_str());
    }
    return 0;
}

int run_encap(const std::string& pub_path, std::optional<uint64_t> seed_opt,
              const std::string& ct_path, const std::string& cr_path,
              std::optional<uint32_t> budget_opt, bool as_json) {
    const rkec::PublicKey pk = rkec::load_public_key_file(pub_path);
    const bool needs_cr =
        !pk.mask_in_positions.empty() || !pk.mask_out_positions.empty();
    if (needs_cr && cr_path.empty())
        throw std::invalid_argument("this key uses shared randomness; pass --cr-bits");
    rkec::CommonRandomnessView cr =
        cr_path.empty() ? rkec::empty_randomness()
                        : rkec::load_randomness_bits_file(cr_path, pk.mask_in_positions.size(),
                                                          pk.mask_out_positions.size());
    const uint32_t budget = budget_opt.value_or(pk.params.correctable);
    const uint64_t seed = resolve_seed(seed_opt);
    rkec::Rng rng(seed, 0);
    const rkec::SharedKey key = rkec::random_shared_key(pk.params, rng);
    const rkec::EncapResult enc = rkec::encapsulate(pk, key, rng, cr, {budget});
    rkec::save_ciphertext_file(ct_path, enc.ct);
    if (as_json) {
        json j{{"seed", seed},
               {"key_hex", key.hex(pk.params)},
               {"ciphertext", ct_path},
               {"budget", budget}};
        std::printf("%s\n", j.dump().c_str());
    } else {
        std::printf("seed: %" PRIu64 "\n", seed);
        std::printf("key: %s\n", key.hex(pk.params).c_str());
        std::printf("ciphertext: %s\n", ct_path.c_str());
    }
    return 0;
}

int run_decap(const std::string& priv_path, const std::string& ct_path,
              const std::string& cr_path, bool as_json) {
    const rkec::PrivateKey sk = rkec::load_private_key_file(priv_path);
    const bool needs_cr =
        !sk.mask_in_positions.empty() || !sk.mask_out_positions.empty();
    if (needs_cr && cr_path.empty())
        throw std::invalid_argument("this key uses shared randomness; pass --cr-bits");
    rkec::CommonRandomnessView cr =
        cr_path.empty() ? rkec::empty_randomness()
                        : rkec::load_randomness_bits_file(cr_path, sk.mask_in_positions.size(),
                                                          sk.mask_out_positions.size());
    const rkec::Ciphertext ct = rkec::load_ciphertext_file(ct_path);
    const rkec::SharedKey key = rkec::decapsulate(sk, ct, cr);
    if (as_json) {
        json j{{"key_hex", key.hex(sk.params)}};
        std::printf("%s\n", j.dump().c_str());
    } else {
        std::printf("key: %s\n", key.hex(sk.params).c_str());
    }
    return 0;
}

int run_analyze(const std::string& preset, bool as_csv, bool as_json) {
    const rkec::ParamSet p = rkec::ParamSet::preset(preset);
    const rkec::SecurityReport rep = rkec::accounting::security_report(p);
    const double mbits = static_cast<double>(rep.public_key_bits) / 1e6;
    const double ref_mbits = static_cast<double>(rep.mceliece_pk_bits) / 1e6;
    const double ratio = static_cast<double>(rep.public_key_bits) /
                         static_cast<double>(rep.mceliece_pk_bits);
    if (as_json) {
        json j{{"preset", p.name},
               {"sec", p.sec},
               {"code_len", p.code_len},
               {"blocks", rep.blocks},
               {"key_bits", rep.key_bits},
               {"public_key_bits", rep.public_key_bits},
               {"public_key_mbits", mbits},
               {"error_search_log2", rep.error_search_log2},
               {"key_search_log2", rep.key_search_log2},
               {"labeling_log2_per_block", rep.labeling_log2_per_block},
               {"labeling_log2_total", rep.labeling_log2_total},
               {"mceliece_pk_bits", rep.mceliece_pk_bits},
               {"size_ratio", ratio}};
        std::printf("%s\n", j.dump().c_str());
    } else if (as_csv) {
        std::printf(
            "preset,sec,code_len,blocks,key_bits,public_key_bits,public_key_mbits,"
            "error_search_log2,key_search_log2,labeling_log2_per_block,labeling_log2_total,"
            "mceliece_pk_bits,size_ratio\n");
        std::printf("%s,%u,%u,%u,%u,%" PRIu64 ",%s,%s,%s,%s,%s,%" PRIu64 ",%s\n",
                    p.name.c_str(), p.sec, p.code_len, rep.blocks, rep.key_bits,
                    rep.public_key_bits, format_double(mbits).c_str(),
                    format_double(rep.error_search_log2).c_str(),
                    format_double(rep.key_search_log2).c_str(),
                    format_double(rep.labeling_log2_per_block).c_str(),
                    format_double(rep.labeling_log2_total).c_str(), rep.mceliece_pk_bits,
                    format_double(ratio).c_str());
    } else {
        std::printf("preset                   %s\n", p.name.c_str());
        std::printf("security target          %u bits\n", p.sec);
        std::printf("component code length    %u\n", p.code_len);
        std::printf("component codes          %u\n", rep.blocks);
        std::printf("key bits                 %u\n", rep.key_bits);
        std::printf("public key bits          %" PRIu64 " (%.1f Mb)\n", rep.public_key_bits,
                    mbits);
        std::printf("error-search exponent    %.2f\n", rep.error_search_log2);
        std::printf("key-search exponent      %.2f\n", rep.key_search_log2);
        std::printf("labeling bits per block  %.2f\n", rep.labeling_log2_per_block);
        std::printf("labeling bits total      %.2f\n", rep.labeling_log2_total);
        std::printf("classical reference key  %" PRIu64 " bits (%.1f Mb)\n",
                    rep.mceliece_pk_bits, ref_mbits);
        std::printf("size ratio               %.3f\n", ratio);
    }
    return 0;
}

int run_simulate_rtt(std::optional<uint64_t> seed_opt, const rkec::DelayModel& model,
                     bool as_json) {
    const uint64_t seed = resolve_seed(seed_opt);
    const rkec::ExchangeResult res = rkec::simulate_exchange(model, seed);
    if (as_json) {
        json rows = json::array();
        for (uint32_t i = 0; i < model.packet_count; ++i) {
            rows.push_back(json{{"packet", i},
                                {"rtt_a", res.samples.rtt_a[i]},
                                {"rtt_b", res.samples.rtt_b[i]},
                                {"bit_a", res.bits.bits_a.get(i) ? 1 : 0},
                                {"bit_b", res.bits.bits_b.get(i) ? 1 : 0}});
        }
        json j{{"seed", seed},
               {"disagreement_rate", res.bits.disagreement_rate},
               {"packets", rows}};
        std::printf("%s\n", j.dump().c_str());
    } else {
        std::printf("packet,rtt_a,rtt_b,bit_a,bit_b\n");
        for (uint32_t i = 0; i < model.packet_count; ++i)
            std::printf("%u,%s,%s,%d,%d\n", i, format_double(res.samples.rtt_a[i]).c_str(),
                        format_double(res.samples.rtt_b[i]).c_str(),
                        res.bits.bits_a.get(i) ? 1 : 0, res.bits.bits_b.get(i) ? 1 : 0);
        std::printf("# seed=%" PRIu64 " disagreement_rate=%s\n", seed,
                    format_double(res.bits.disagreement_rate).c_str());
    }
    return 0;
}

int run_simulate_consolidation(const std::string& preset, std::optional<uint64_t> seed_opt,
                               const std::string& sweep_text, double epsilon, uint64_t trials,
                               uint32_t injected, uint32_t trials_per_key, uint32_t threads,
                               bool as_json) {
    const rkec::ParamSet params = rkec::ParamSet::preset(preset);
    const uint64_t seed = resolve_seed(seed_opt);
    std::vector<double> points;
    if (!sweep_text.empty()) {
        const SweepRange r = parse_sweep(sweep_text);
        for (uint32_t i = 0; i < r.steps; ++i) {
            const double t = r.steps == 1 ? 0.0
                                          : static_cast<double>(i) /
                                                static_cast<double>(r.steps - 1);
            points.push_back(r.lo + t * (r.hi - r.lo));
        }
    } else {
        points.push_back(epsilon);
    }

    std::vector<rkec::CurveRow> rows;
    rows.reserve(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        rkec::ConsolidationConfig cfg;
        cfg.params = params;
        cfg.epsilon = points[i];
        cfg.trials = trials;
        cfg.injected_weight = injected;
        cfg.trials_per_key = trials_per_key;
        cfg.threads = threads;
        rows.push_back(rkec::consolidation_experiment(cfg, seed + i));
    }

    if (as_json) {
        json arr = json::array();
        for (const rkec::CurveRow& row : rows)
            arr.push_back(json{{"epsilon", row.epsilon},
                               {"block_error_rate", row.block_error_rate},
                               {"key_failure_rate", row.key_failure_rate},
                               {"trials", row.trials},
                               {"blocks", row.blocks}});
        json j{{"seed", seed}, {"preset", preset}, {"rows", arr}};
        std::printf("%s\n", j.dump().c_str());
    } else {
        std::printf("epsilon,block_error_rate,key_failure_rate,trials\n");
        for (const rkec::CurveRow& row : rows)
            std::printf("%s,%s,%s,%" PRIu64 "\n", format_double(row.epsilon).c_str(),
                        format_double(row.block_error_rate).c_str(),
                        format_double(row.key_failure_rate).c_str(), row.trials);
        std::printf("# seed=%" PRIu64 "\n", seed);
    }
    return 0;
}

int run_attack_toy(std::optional<uint64_t> seed_opt, uint32_t blocks, uint32_t budget,
                   uint32_t cr_in, uint32_t cr_out) {
    const rkec::ParamSet params = rkec::ParamSet::custom(3, blocks);
    const uint64_t seed = resolve_seed(seed_opt);
    rkec::Rng keygen_rng(seed, 0);
    const rkec::KeyPair kp =
        rkec::generate_keypair(params, keygen_rng, {cr_in, cr_out, false});
    rkec::Rng encap_rng(seed, kAttackEncapStream);
    const rkec::SharedKey key = rkec::random_shared_key(params, encap_rng);
    const rkec::CommonRandomnessView cr = rkec::random_randomness(kp.pub, encap_rng);
    const rkec::EncapResult enc = rkec::encapsulate(kp.pub, key, encap_rng, cr, {budget});

    const rkec::AttackResult res =
        rkec::exhaustive_attack(kp.pub, enc.ct, budget, key.symbols);
    json j{{"seed", seed},
           {"blocks", blocks},
           {"budget", budget},
           {"mask_in_count", cr_in},
           {"mask_out_count", cr_out},
           {"candidates_tested", res.candidates_tested},
           {"accepted_count", res.accepted_count},
           {"unique", res.unique},
           {"true_key_accepted", res.true_key_accepted},
           {"recovered_symbols", res.recovered_symbols},
           {"true_symbols", key.symbols}};
    std::printf("%s\n", j.dump().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomized key encapsulation over punctured component codes"};
    app.require_subcommand(1);
    // --seed / --json live on the root; let them appear after the subcommand.
    app.fallthrough();

    std::optional<uint64_t> seed;
    bool as_json = false;
    app.add_option("--seed", seed, "generator seed; drawn from entropy and printed if omitted")
        ->capture_default_str();
    app.add_flag("--json", as_json, "machine-readable output");

    const auto preset_check = CLI::IsMember({"rm16", "rm32", "toy8"});

    // keygen
    auto* kg = app.add_subcommand("keygen", "generate a key pair");
    std::string preset = "rm16", out_pub = "pub.rke", out_priv = "priv.rke";
    uint32_t cr_in = 0, cr_out = 0;
    bool cr_full = false;
    kg->add_option("--preset", preset, "parameter preset")->check(preset_check);
    kg->add_option("--out-pub", out_pub, "public key output path");
    kg->add_option("--out-priv", out_priv, "private key output path");
    kg->add_option("--cr-r1", cr_in, "input-side shared-randomness positions");
    kg->add_option("--cr-r2", cr_out, "output-side shared-randomness positions");
    kg->add_flag("--cr-full-mask", cr_full, "mask every input coordinate");

    // encap
    auto* en = app.add_subcommand("encap", "encapsulate a fresh key");
    std::string pub_path, ct_path = "ct.rkc", cr_path;
    std::optional<uint32_t> budget_opt;
    en->add_option("--pub", pub_path, "public key path")->required();
    en->add_option("--ct", ct_path, "ciphertext output path");
    en->add_option("--cr-bits", cr_path, "shared-randomness bit file");
    en->add_option("--budget", budget_opt, "per-block error weight (default: full radius)");

    // decap
    auto* de = app.add_subcommand("decap", "recover a key from a ciphertext");
    std::string priv_path, de_ct_path, de_cr_path;
    de->add_option("--priv", priv_path, "private key path")->required();
    de->add_option("--ct", de_ct_path, "ciphertext path")->required();
    de->add_option("--cr-bits", de_cr_path, "shared-randomness bit file");

    // analyze
    auto* an = app.add_subcommand("analyze", "print size and work-factor figures");
    std::string an_preset = "rm16";
    bool as_csv = false;
    an->add_option("--preset", an_preset, "parameter preset")->check(preset_check);
    an->add_flag("--csv", as_csv, "CSV instead of a table");

    // simulate
    auto* sim = app.add_subcommand("simulate", "delay and consolidation simulators");
    sim->require_subcommand(1);
    auto* rtt = sim->add_subcommand("rtt", "looped round-trip-time exchange");
    rkec::DelayModel model;
    std::string jitter_family = "exponential";
    rtt->add_option("--packets", model.packet_count, "packets per exchange");
    rtt->add_option("--loops", model.loop_count, "hops in the loop");
    rtt->add_option("--base-delay", model.base_delay, "fixed per-segment delay");
    rtt->add_option("--jitter-family", jitter_family, "exponential or truncated_normal")
        ->check(CLI::IsMember({"exponential", "truncated_normal"}));
    rtt->add_option("--jitter-scale", model.jitter_scale, "per-segment jitter scale");
    rtt->add_option("--private-scale", model.private_noise_scale,
                    "per-endpoint measurement noise scale");

    auto* cons = sim->add_subcommand("consolidation", "end-to-end disagreement sweep");
    std::string cons_preset = "rm16", sweep_text;
    double cons_eps = 0.0;
    uint64_t cons_trials = 1000;
    uint32_t cons_w = 0, cons_tpk = 48, cons_threads = 1;
    cons->add_option("--preset", cons_preset, "parameter preset")->check(preset_check);
    cons->add_option("--eps-sweep", sweep_text, "lo:hi:steps disagreement sweep");
    cons->add_option("--epsilon", cons_eps, "single disagreement rate");
    cons->add_option("--trials", cons_trials, "encapsulation runs per point");
    cons->add_option("--w-inj", cons_w, "injected per-block error weight");
    cons->add_option("--trials-per-key", cons_tpk, "trials before a fresh key pair");
    cons->add_option("--threads", cons_threads, "worker threads (output is identical)");

    // attack
    auto* att = app.add_subcommand("attack", "toy-scale attacks");
    att->require_subcommand(1);
    auto* toy = att->add_subcommand("toy", "exhaustive codeword-tuple search");
    uint32_t att_blocks = 2, att_budget = 1, att_cr_in = 0, att_cr_out = 0;
    toy->add_option("--blocks", att_blocks, "component codes in the toy instance");
    toy->add_option("--budget", att_budget, "per-block error weight");
    toy->add_option("--cr-r1", att_cr_in, "input-side shared-randomness positions");
    toy->add_option("--cr-r2", att_cr_out, "output-side shared-randomness positions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (kg->parsed())
            return run_keygen(preset, seed, out_pub, out_priv, cr_in, cr_out, cr_full, as_json);
        if (en->parsed()) return run_encap(pub_path, seed, ct_path, cr_path, budget_opt, as_json);
        if (de->parsed()) return run_decap(priv_path, de_ct_path, de_cr_path, as_json);
        if (an->parsed()) return run_analyze(an_preset, as_csv, as_json);
        if (sim->parsed() && rtt->parsed()) {
            model.jitter_family = jitter_family == "exponential"
                                      ? rkec::JitterFamily::exponential
                                      : rkec::JitterFamily::truncated_normal;
            return run_simulate_rtt(seed, model, as_json);
        }
        if (sim->parsed() && cons->parsed())
            return run_simulate_consolidation(cons_preset, seed, sweep_text, cons_eps,
                                              cons_trials, cons_w, cons_tpk, cons_threads,
                                              as_json);
        if (att->parsed() && toy->parsed())
            return run_attack_toy(seed, att_blocks, att_budget, att_cr_in, att_cr_out);
    } catch (const rkec::DecapFailure& e) {
        std::fprintf(stderr, "decapsulation failed: %s\n", e.what());
        return 3;
    } catch (const rkec::FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
