#include "rkec/kem.hpp"

#include <cassert>
#include <stdexcept>

#include "rkec/component_code.hpp"
#include "rkec/errors.hpp"
#include "rkec/rng.hpp"

namespace rkec {

std::string SharedKey::hex(const ParamSet& params) const {
    return value.to_hex((params.sec + 3) / 4);
}

std::vector<uint32_t> key_to_symbols(const BigUint& value, const ParamSet& params) {
    BigUint rest = value;
    std::vector<uint32_t> symbols(params.blocks, 0);
    for (uint32_t b = 0; b < params.blocks; ++b)
        symbols[b] = static_cast<uint32_t>(rest.divmod_small(params.codebook_size));
    if (!rest.is_zero()) throw std::invalid_argument("key value exceeds the symbol space");
    return symbols;
}

BigUint symbols_to_key(std::span<const uint32_t> symbols, const ParamSet& params) {
    if (symbols.size() != params.blocks)
        throw std::invalid_argument("symbol count does not match block count");
    BigUint value;
    for (size_t b = symbols.size(); b-- > 0;) {
        if (symbols[b] >= params.codebook_size)
            throw std::invalid_argument("symbol out of range");
        value.mul_small(params.codebook_size);
        value.add_small(symbols[b]);
    }
    return value;
}

SharedKey make_shared_key(BigUint value, const ParamSet& params) {
    if (!(value < BigUint::pow2(params.sec)))
        throw std::invalid_argument("key value out of range for the security exponent");
    SharedKey key;
    key.symbols = key_to_symbols(value, params);
    key.value = std::move(value);
    return key;
}

SharedKey shared_key_from_symbols(std::span<const uint32_t> symbols, const ParamSet& params) {
    SharedKey key;
    key.value = symbols_to_key(symbols, params);
    key.symbols.assign(symbols.begin(), symbols.end());
    return key;
}

SharedKey random_shared_key(const ParamSet& params, Rng& rng) {
    std::vector<uint64_t> limbs((params.sec + 63) / 64);
    for (auto& limb : limbs) limb = rng.next();
    const uint32_t top_bits = params.sec % 64;
    if (top_bits != 0) limbs.back() &= (1ull << top_bits) - 1;
    return make_shared_key(BigUint::from_limbs(std::move(limbs)), params);
}

CommonRandomnessView empty_randomness() { return {}; }

CommonRandomnessView random_randomness(const PublicKey& pk, Rng& rng) {
    CommonRandomnessView cr;
    cr.bits_in = BitVector::random(static_cast<uint32_t>(pk.mask_in_positions.size()), rng);
    cr.bits_out = BitVector::random(static_cast<uint32_t>(pk.mask_out_positions.size()), rng);
    return cr;
}

EncapResult encapsulate(const PublicKey& pk, const SharedKey& key, Rng& rng,
                        const CommonRandomnessView& cr, const ErrorBudget& budget) {
    const ParamSet& prm = pk.params;
    if (budget.total > prm.correctable)
        throw std::invalid_argument("error budget " + std::to_string(budget.total) +
                                    " exceeds correction radius " +
                                    std::to_string(prm.correctable));
    if (key.symbols.size() != prm.blocks)
        throw std::invalid_argument("key symbol count does not match block count");
    if (cr.bits_in.size() != pk.mask_in_positions.size() ||
        cr.bits_out.size() != pk.mask_out_positions.size())
        throw std::invalid_argument("common-randomness view does not match key mask sizes");

    const Codebook book(prm.log2_len);
    EncapsulationTrace trace;
    trace.symbols.assign(key.symbols.begin(), key.symbols.end());

    // Codewords plus one fresh pad bit per block.
    trace.code_vec = BitVector(prm.input_len);
    for (uint32_t b = 0; b < prm.blocks; ++b) {
        const uint32_t base = b * prm.block_len;
        const BitVector& w = book.word(pk.labelings[b].forward[key.symbols[b]]);
        for (uint32_t c = 0; c < prm.code_len; ++c)
            if (w.get(c)) trace.code_vec.set(base + c, true);
        trace.code_vec.set(base + prm.code_len, rng.bit());
    }

    // Per block: split the budget, then place input- and output-side errors.
    trace.input_errors = BitVector(prm.input_len);
    trace.output_errors = BitVector(prm.message_len + prm.tail_len);
    trace.weights.resize(prm.blocks);
    for (uint32_t b = 0; b < prm.blocks; ++b) {
        const uint32_t w_in = static_cast<uint32_t>(rng.below(budget.total + 1));
        const uint32_t w_out = budget.total - w_in;
        trace.weights[b] = {w_in, w_out};
        for (uint32_t pos : rng.sample_distinct(w_in, prm.block_len))
            trace.input_errors.set(b * prm.block_len + pos, true);
        for (uint32_t pos : rng.sample_distinct(w_out, prm.code_len))
            trace.output_errors.set(b * prm.code_len + pos, true);
    }

    trace.mask_in_vec = BitVector(prm.input_len);
    for (size_t k = 0; k < pk.mask_in_positions.size(); ++k)
        if (cr.bits_in.get(static_cast<uint32_t>(k)))
            trace.mask_in_vec.set(pk.mask_in_positions[k], true);
    trace.mask_out_vec = BitVector(prm.message_len + prm.tail_len);
    for (size_t k = 0; k < pk.mask_out_positions.size(); ++k)
        if (cr.bits_out.get(static_cast<uint32_t>(k)))
            trace.mask_out_vec.set(pk.mask_out_positions[k], true);

    BitVector input = trace.code_vec;
    input ^= trace.input_errors;
    input ^= trace.mask_in_vec;
    BitVector out = mat_vec(pk.matrix, input);
    out ^= trace.output_errors;
    out ^= trace.mask_out_vec;

    EncapResult res;
    res.ct.bits = std::move(out);
    res.trace = std::move(trace);
    return res;
}

std::vector<std::optional<uint32_t>> decapsulate_blocks(const PrivateKey& sk,
                                                        const Ciphertext& ct,
                                                        const CommonRandomnessView& cr) {
    const ParamSet& prm = sk.params;
    if (ct.bits.size() != prm.message_len + prm.tail_len)
        throw FormatError("ciphertext length " + std::to_string(ct.bits.size()) +
                          " does not match the key's " +
                          std::to_string(prm.message_len + prm.tail_len));
    if (cr.bits_in.size() != sk.mask_in_positions.size() ||
        cr.bits_out.size() != sk.mask_out_positions.size())
        throw std::invalid_argument("common-randomness view does not match key mask sizes");

    // Fold the tail into the top rows.
    BitVector u = ct.bits.slice(0, prm.message_len);
    u ^= mat_vec(sk.tail_fold, ct.bits.slice(prm.message_len, prm.message_len + prm.tail_len));

    // Remove this party's mask copy.  Input-side bits act through the
    // coordinate map; bits on punctured coordinates never reach the output.
    std::vector<uint32_t> inverse_map(prm.input_len, UINT32_MAX);
    for (uint32_t i = 0; i < prm.message_len; ++i) inverse_map[sk.coord_map[i]] = i;
    for (size_t k = 0; k < sk.mask_in_positions.size(); ++k) {
        if (!cr.bits_in.get(static_cast<uint32_t>(k))) continue;
        const uint32_t out_coord = inverse_map[sk.mask_in_positions[k]];
        if (out_coord != UINT32_MAX) u.flip(out_coord);
    }
    for (size_t k = 0; k < sk.mask_out_positions.size(); ++k)
        if (cr.bits_out.get(static_cast<uint32_t>(k))) u.flip(sk.mask_out_positions[k]);

    const Codebook book(prm.log2_len);
    std::vector<std::optional<uint32_t>> symbols(prm.blocks);
    std::vector<uint32_t> coords;
    BitVector observed(prm.code_len);
    for (uint32_t b = 0; b < prm.blocks; ++b) {
        coords.clear();
        const uint32_t base = b * prm.block_len;
        for (uint32_t r = 0; r < prm.code_len; ++r) {
            const uint32_t out_row = b * prm.code_len + r;
            const uint32_t rel = sk.coord_map[out_row] - base;
            if (rel == prm.code_len) continue;  // pad coordinate, discarded
            observed.set(static_cast<uint32_t>(coords.size()), u.get(out_row));
            coords.push_back(rel);
        }
        try {
            const Codebook::Decoded dec =
                book.decode({coords.data(), coords.size()}, observed);
            symbols[b] = sk.labelings[b].inverse[dec.index];
        } catch (const DecodeFailure&) {
            symbols[b] = std::nullopt;
        }
    }
    return symbols;
}

SharedKey decapsulate(const PrivateKey& sk, const Ciphertext& ct,
                      const CommonRandomnessView& cr) {
    const std::vector<std::optional<uint32_t>> blocks = decapsulate_blocks(sk, ct, cr);
    std::vector<uint32_t> failed;
    std::vector<uint32_t> symbols(blocks.size(), 0);
    for (uint32_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b])
            symbols[b] = *blocks[b];
        else
            failed.push_back(b);
    }
    if (!failed.empty()) {
        std::string msg = std::to_string(failed.size()) + " block(s) failed to decode";
        throw DecapFailure(msg, std::move(failed));
    }
    BigUint value = symbols_to_key(symbols, sk.params);
    if (!(value < BigUint::pow2(sk.params.sec)))
        throw DecapFailure("recovered value outside the key range");
    SharedKey key;
    key.value = std::move(value);
    key.symbols = std::move(symbols);
    return key;
}

}  // namespace rkec
