#pragma once

// Dense linear algebra over GF(2).  Bits are packed LSB first into 64-bit
// words; matrices are row-major with each row padded to a whole number of
// words.  Padding bits are kept at zero by every mutator so that equality
// and row operations can work wordwise.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace rkec {

class Rng;

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(uint32_t size) : size_(size), words_((size + 63) / 64, 0) {}
    static BitVector random(uint32_t size, Rng& rng);

    uint32_t size() const { return size_; }
    bool get(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(uint32_t i, bool v) {
        const uint64_t mask = 1ull << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(uint32_t i) { words_[i >> 6] ^= 1ull << (i & 63); }

    uint32_t popcount() const;
    bool any() const;
    BitVector& operator^=(const BitVector& o);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    bool operator==(const BitVector&) const = default;

    BitVector slice(uint32_t begin, uint32_t end) const;
    static BitVector concat(const BitVector& a, const BitVector& b);

    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> words() { return words_; }

private:
    uint32_t size_ = 0;
    std::vector<uint64_t> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(uint32_t rows, uint32_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(size_t(rows) * wpr_, 0) {}

    static BitMatrix identity(uint32_t n);
    static BitMatrix random(uint32_t rows, uint32_t cols, Rng& rng);
    // One 1 per row: row i selects input coordinate image[i] (image values < cols).
    static BitMatrix selection(uint32_t cols, std::span<const uint32_t> image);
    // Square permutation: row i has its 1 at column image[i].
    static BitMatrix permutation(std::span<const uint32_t> image);
    static BitMatrix random_permutation(uint32_t n, Rng& rng);

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }
    uint32_t words_per_row() const { return wpr_; }

    bool get(uint32_t r, uint32_t c) const {
        return (words_[size_t(r) * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(uint32_t r, uint32_t c, bool v) {
        const uint64_t mask = 1ull << (c & 63);
        uint64_t& w = words_[size_t(r) * wpr_ + (c >> 6)];
        if (v)
            w |= mask;
        else
            w &= ~mask;
    }

    std::span<const uint64_t> row(uint32_t r) const { return {&words_[size_t(r) * wpr_], wpr_}; }
    std::span<uint64_t> row(uint32_t r) { return {&words_[size_t(r) * wpr_], wpr_}; }
    void swap_rows(uint32_t a, uint32_t b);
    void xor_row_from(uint32_t dst, uint32_t src);

    BitVector row_vector(uint32_t r) const;
    void set_row(uint32_t r, const BitVector& v);
    BitVector column(uint32_t c) const;

    // Copies src into this matrix with its top-left corner at (row_off, col_off).
    void paste(uint32_t row_off, uint32_t col_off, const BitMatrix& src);

    bool operator==(const BitMatrix&) const = default;

private:
    uint32_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<uint64_t> words_;
};

BitMatrix mul(const BitMatrix& a, const BitMatrix& b);
BitVector mat_vec(const BitMatrix& a, const BitVector& x);
BitMatrix transpose(const BitMatrix& a);
BitMatrix operator^(const BitMatrix& a, const BitMatrix& b);

// Gauss-Jordan inverse; empty when the matrix is singular.
std::optional<BitMatrix> invert(const BitMatrix& a);
uint32_t rank(const BitMatrix& a);

BitMatrix vconcat(const BitMatrix& top, const BitMatrix& bottom);
BitMatrix block2x2(const BitMatrix& tl, const BitMatrix& tr, const BitMatrix& bl,
                   const BitMatrix& br);

// Framed binary image: magic "RKB1", u32 rows, u32 cols, then row-major bits
// with each row padded to whole bytes (LSB first within a byte).
void write_bitmatrix(std::ostream& os, const BitMatrix& m);
BitMatrix read_bitmatrix(std::istream& is);

}  // namespace rkec
