#pragma once

// On-disk formats.  Key files: magic "RKE1", u16 version, u32 JSON length,
// a small JSON object naming the instance shape, then one u32-length-prefixed
// section per field.  Ciphertexts: magic "RKC1", u32 bit length, packed bits.
// All integers little-endian, all bit payloads LSB first.

#include <iosfwd>
#include <string>

#include "rkec/kem.hpp"
#include "rkec/keygen.hpp"

namespace rkec {

void save_public_key(std::ostream& os, const PublicKey& pk);
PublicKey load_public_key(std::istream& is);
void save_private_key(std::ostream& os, const PrivateKey& sk);
PrivateKey load_private_key(std::istream& is);

void save_ciphertext(std::ostream& os, const Ciphertext& ct);
Ciphertext load_ciphertext(std::istream& is);

// Shared-randomness bit files: a single line of '0'/'1' characters, the
// input-side bits (in mask-position order) followed by the output-side bits.
CommonRandomnessView load_randomness_bits(std::istream& is, size_t input_count,
                                          size_t output_count);
void save_randomness_bits(std::ostream& os, const CommonRandomnessView& cr);

// File-path conveniences; throw FormatError when the file cannot be opened.
void save_public_key_file(const std::string& path, const PublicKey& pk);
PublicKey load_public_key_file(const std::string& path);
void save_private_key_file(const std::string& path, const PrivateKey& sk);
PrivateKey load_private_key_file(const std::string& path);
void save_ciphertext_file(const std::string& path, const Ciphertext& ct);
Ciphertext load_ciphertext_file(const std::string& path);
CommonRandomnessView load_randomness_bits_file(const std::string& path, size_t input_count,
                                               size_t output_count);
void save_randomness_bits_file(const std::string& path, const CommonRandomnessView& cr);

}  // namespace rkec
