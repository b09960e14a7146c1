#pragma once

// Little-endian primitives shared by the on-disk formats.  All multi-byte
// integers are serialized LSB first regardless of host order.

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "rkec/errors.hpp"

namespace rkec::wire {

inline void write_u16(std::ostream& os, uint16_t v) {
    const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
    os.write(b, 2);
}

inline void write_u32(std::ostream& os, uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

inline void read_exact(std::istream& is, char* dst, size_t n, const char* what) {
    is.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<size_t>(is.gcount()) != n)
        throw FormatError(std::string("truncated input while reading ") + what);
}

inline uint16_t read_u16(std::istream& is, const char* what) {
    char b[2];
    read_exact(is, b, 2, what);
    return static_cast<uint16_t>(static_cast<uint8_t>(b[0]) |
                                 (static_cast<uint16_t>(static_cast<uint8_t>(b[1])) << 8));
}

inline uint32_t read_u32(std::istream& is, const char* what) {
    char b[4];
    read_exact(is, b, 4, what);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<uint8_t>(b[i])) << (8 * i);
    return v;
}

inline void expect_magic(std::istream& is, const char (&magic)[5], const char* what) {
    char b[4];
    read_exact(is, b, 4, what);
    for (int i = 0; i < 4; ++i) {
        if (b[i] != magic[i])
            throw FormatError(std::string("bad magic for ") + what + ", expected " + magic);
    }
}

}  // namespace rkec::wire
