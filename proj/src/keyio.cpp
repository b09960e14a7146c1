#include "rkec/keyio.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "rkec/errors.hpp"
#include "rkec/wire.hpp"

namespace rkec {

namespace {

constexpr uint16_t kVersion = 1;

void write_section(std::ostream& os, const std::string& payload) {
    wire::write_u32(os, static_cast<uint32_t>(payload.size()));
    os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

std::string read_section(std::istream& is, const char* what) {
    const uint32_t len = wire::read_u32(is, what);
    std::string payload(len, '\0');
    if (len > 0) wire::read_exact(is, payload.data(), len, what);
    return payload;
}

std::string pack_matrix(const BitMatrix& m) {
    std::ostringstream os(std::ios::binary);
    write_bitmatrix(os, m);
    return std::move(os).str();
}

BitMatrix unpack_matrix(const std::string& payload, const char* what) {
    std::istringstream is(payload, std::ios::binary);
    BitMatrix m = read_bitmatrix(is);
    if (is.peek() != std::istream::traits_type::eof())
        throw FormatError(std::string("trailing bytes in ") + what);
    return m;
}

std::string pack_u32_list(const std::vector<uint32_t>& values) {
    std::ostringstream os(std::ios::binary);
    for (uint32_t v : values) wire::write_u32(os, v);
    return std::move(os).str();
}

std::vector<uint32_t> unpack_u32_list(const std::string& payload, const char* what) {
    if (payload.size() % 4 != 0)
        throw FormatError(std::string("misaligned integer list in ") + what);
    std::istringstream is(payload, std::ios::binary);
    std::vector<uint32_t> values(payload.size() / 4);
    for (auto& v : values) v = wire::read_u32(is, what);
    return values;
}

std::string pack_labelings(const std::vector<Labeling>& labelings) {
    std::ostringstream os(std::ios::binary);
    for (const Labeling& lab : labelings)
        for (uint16_t idx : lab.forward) wire::write_u16(os, idx);
    return std::move(os).str();
}

std::vector<Labeling> unpack_labelings(const std::string& payload, const ParamSet& prm) {
    const size_t expected = size_t(prm.blocks) * prm.codebook_size * 2;
    if (payload.size() != expected) throw FormatError("labeling section has wrong size");
    std::istringstream is(payload, std::ios::binary);
    std::vector<Labeling> labelings;
    labelings.reserve(prm.blocks);
    for (uint32_t b = 0; b < prm.blocks; ++b) {
        std::vector<uint16_t> fwd(prm.codebook_size);
        for (auto& v : fwd) v = wire::read_u16(is, "labeling");
        labelings.push_back(Labeling::from_forward(std::move(fwd)));
    }
    return labelings;
}

void check_positions(const std::vector<uint32_t>& positions, uint32_t bound, const char* what) {
    for (size_t k = 0; k < positions.size(); ++k) {
        if (positions[k] >= bound)
            throw FormatError(std::string(what) + " position out of range");
        if (k > 0 && positions[k] <= positions[k - 1])
            throw FormatError(std::string(what) + " positions not strictly increasing");
    }
}

void write_header(std::ostream& os, const ParamSet& prm, const char* kind) {
    nlohmann::json j{{"kind", kind},
                     {"name", prm.name},
                     {"sec", prm.sec},
                     {"log2_len", prm.log2_len},
                     {"blocks", prm.blocks}};
    const std::string text = j.dump();
    os.write("RKE1", 4);
    wire::write_u16(os, kVersion);
    wire::write_u32(os, static_cast<uint32_t>(text.size()));
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
}

ParamSet read_header(std::istream& is, const char* expected_kind) {
    wire::expect_magic(is, "RKE1", "key file");
    const uint16_t version = wire::read_u16(is, "key file version");
    if (version != kVersion)
        throw FormatError("unsupported key file version " + std::to_string(version));
    const uint32_t json_len = wire::read_u32(is, "key file header length");
    if (json_len > (1u << 20)) throw FormatError("key file header too large");
    std::string text(json_len, '\0');
    wire::read_exact(is, text.data(), json_len, "key file header");
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        const std::string kind = j.at("kind").get<std::string>();
        if (kind != expected_kind)
            throw FormatError("expected a " + std::string(expected_kind) + " key, found " + kind);
        return ParamSet::make(j.at("log2_len").get<uint32_t>(), j.at("blocks").get<uint32_t>(),
                              j.at("sec").get<uint32_t>(), j.at("name").get<std::string>());
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception& e) {
        throw FormatError(std::string("bad key file header: ") + e.what());
    }
}

void expect_end(std::istream& is, const char* what) {
    if (is.peek() != std::istream::traits_type::eof())
        throw FormatError(std::string("trailing bytes after ") + what);
}

template <typename T, typename Saver>
void save_to_file(const std::string& path, const T& value, Saver saver) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("cannot open '" + path + "' for writing");
    saver(os, value);
    os.flush();
    if (!os) throw FormatError("failed writing '" + path + "'");
}

template <typename Loader>
auto load_from_file(const std::string& path, Loader loader) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open '" + path + "' for reading");
    return loader(is);
}

}  // namespace

void save_public_key(std::ostream& os, const PublicKey& pk) {
    write_header(os, pk.params, "public");
    write_section(os, pack_matrix(pk.matrix));
    write_section(os, pack_labelings(pk.labelings));
    write_section(os, pack_u32_list(pk.mask_in_positions));
    write_section(os, pack_u32_list(pk.mask_out_positions));
}

PublicKey load_public_key(std::istream& is) {
    PublicKey pk;
    pk.params = read_header(is, "public");
    pk.matrix = unpack_matrix(read_section(is, "public matrix"), "public matrix");
    if (pk.matrix.rows() != pk.params.message_len + pk.params.tail_len ||
        pk.matrix.cols() != pk.params.input_len)
        throw FormatError("public matrix dimensions do not match the parameters");
    pk.labelings = unpack_labelings(read_section(is, "labelings"), pk.params);
    pk.mask_in_positions = unpack_u32_list(read_section(is, "input mask"), "input mask");
    pk.mask_out_positions = unpack_u32_list(read_section(is, "output mask"), "output mask");
    check_positions(pk.mask_in_positions, pk.params.input_len, "input mask");
    check_positions(pk.mask_out_positions, pk.params.message_len, "output mask");
    expect_end(is, "public key");
    return pk;
}

void save_private_key(std::ostream& os, const PrivateKey& sk) {
    write_header(os, sk.params, "private");
    write_section(os, pack_matrix(sk.tail_fold));
    write_section(os, pack_u32_list(sk.coord_map));
    write_section(os, pack_u32_list(sk.punctured));
    write_section(os, pack_labelings(sk.labelings));
    write_section(os, pack_u32_list(sk.mask_in_positions));
    write_section(os, pack_u32_list(sk.mask_out_positions));
}

PrivateKey load_private_key(std::istream& is) {
    PrivateKey sk;
    sk.params = read_header(is, "private");
    const ParamSet& prm = sk.params;
    sk.tail_fold = unpack_matrix(read_section(is, "tail fold"), "tail fold");
    if (sk.tail_fold.rows() != prm.message_len || sk.tail_fold.cols() != prm.tail_len)
        throw FormatError("tail-fold dimensions do not match the parameters");
    sk.coord_map = unpack_u32_list(read_section(is, "coordinate map"), "coordinate map");
    sk.punctured = unpack_u32_list(read_section(is, "punctured list"), "punctured list");
    if (sk.coord_map.size() != prm.message_len)
        throw FormatError("coordinate map has wrong length");
    if (sk.punctured.size() != prm.blocks)
        throw FormatError("punctured list has wrong length");
    // Per block, the selected coordinates plus the punctured one must tile
    // the block's input coordinates exactly.
    for (uint32_t b = 0; b < prm.blocks; ++b) {
        const uint32_t base = b * prm.block_len;
        std::vector<bool> seen(prm.block_len, false);
        auto mark = [&](uint32_t coord) {
            if (coord < base || coord >= base + prm.block_len || seen[coord - base])
                throw FormatError("coordinate map is not a block-preserving selection");
            seen[coord - base] = true;
        };
        for (uint32_t r = 0; r < prm.code_len; ++r) mark(sk.coord_map[b * prm.code_len + r]);
        mark(sk.punctured[b]);
    }
    sk.labelings = unpack_labelings(read_section(is, "labelings"), prm);
    sk.mask_in_positions = unpack_u32_list(read_section(is, "input mask"), "input mask");
    sk.mask_out_positions = unpack_u32_list(read_section(is, "output mask"), "output mask");
    check_positions(sk.mask_in_positions, prm.input_len, "input mask");
    check_positions(sk.mask_out_positions, prm.message_len, "output mask");
    expect_end(is, "private key");
    return sk;
}

void save_ciphertext(std::ostream& os, const Ciphertext& ct) {
    os.write("RKC1", 4);
    wire::write_u32(os, ct.bits.size());
    const uint32_t bytes = (ct.bits.size() + 7) / 8;
    auto words = ct.bits.words();
    for (uint32_t b = 0; b < bytes; ++b)
        os.put(static_cast<char>((words[b >> 3] >> (8 * (b & 7))) & 0xff));
}

Ciphertext load_ciphertext(std::istream& is) {
    wire::expect_magic(is, "RKC1", "ciphertext");
    const uint32_t bits = wire::read_u32(is, "ciphertext length");
    if (bits > (1u << 28)) throw FormatError("ciphertext length out of range");
    Ciphertext ct;
    ct.bits = BitVector(bits);
    const uint32_t bytes = (bits + 7) / 8;
    std::vector<char> buf(bytes);
    if (bytes > 0) wire::read_exact(is, buf.data(), bytes, "ciphertext payload");
    auto words = ct.bits.words();
    for (uint32_t b = 0; b < bytes; ++b)
        words[b >> 3] |= static_cast<uint64_t>(static_cast<uint8_t>(buf[b])) << (8 * (b & 7));
    const uint32_t rem = bits % 64;
    if (rem != 0 && (words.back() & ~((1ull << rem) - 1)) != 0)
        throw FormatError("ciphertext has nonzero padding bits");
    expect_end(is, "ciphertext");
    return ct;
}

CommonRandomnessView load_randomness_bits(std::istream& is, size_t input_count,
                                          size_t output_count) {
    std::string bits;
    char c;
    while (is.get(c)) {
        if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
        if (c != '0' && c != '1')
            throw FormatError("randomness bit file may contain only '0' and '1'");
        bits.push_back(c);
    }
    if (bits.size() != input_count + output_count)
        throw FormatError("randomness bit file holds " + std::to_string(bits.size()) +
                          " bits, expected " + std::to_string(input_count + output_count));
    CommonRandomnessView cr;
    cr.bits_in = BitVector(static_cast<uint32_t>(input_count));
    cr.bits_out = BitVector(static_cast<uint32_t>(output_count));
    for (size_t k = 0; k < input_count; ++k)
        cr.bits_in.set(static_cast<uint32_t>(k), bits[k] == '1');
    for (size_t k = 0; k < output_count; ++k)
        cr.bits_out.set(static_cast<uint32_t>(k), bits[input_count + k] == '1');
    return cr;
}

void save_randomness_bits(std::ostream& os, const CommonRandomnessView& cr) {
    for (uint32_t k = 0; k < cr.bits_in.size(); ++k) os.put(cr.bits_in.get(k) ? '1' : '0');
    for (uint32_t k = 0; k < cr.bits_out.size(); ++k) os.put(cr.bits_out.get(k) ? '1' : '0');
    os.put('\n');
}

void save_public_key_file(const std::string& path, const PublicKey& pk) {
    save_to_file(path, pk, [](std::ostream& os, const PublicKey& v) { save_public_key(os, v); });
}

PublicKey load_public_key_file(const std::string& path) {
    return load_from_file(path, [](std::istream& is) { return load_public_key(is); });
}

void save_private_key_file(const std::string& path, const PrivateKey& sk) {
    save_to_file(path, sk,
                 [](std::ostream& os, const PrivateKey& v) { save_private_key(os, v); });
}

PrivateKey load_private_key_file(const std::string& path) {
    return load_from_file(path, [](std::istream& is) { return load_private_key(is); });
}

void save_ciphertext_file(const std::string& path, const Ciphertext& ct) {
    save_to_file(path, ct, [](std::ostream& os, const Ciphertext& v) { save_ciphertext(os, v); });
}

Ciphertext load_ciphertext_file(const std::string& path) {
    return load_from_file(path, [](std::istream& is) { return load_ciphertext(is); });
}

CommonRandomnessView load_randomness_bits_file(const std::string& path, size_t input_count,
                                               size_t output_count) {
    return load_from_file(path, [&](std::istream& is) {
        return load_randomness_bits(is, input_count, output_count);
    });
}

void save_randomness_bits_file(const std::string& path, const CommonRandomnessView& cr) {
    save_to_file(path, cr, [](std::ostream& os, const CommonRandomnessView& v) {
        save_randomness_bits(os, v);
    });
}

}  // namespace rkec
