#include "rkec/bitmat.hpp"

#include <bit>
#include <cassert>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "rkec/rng.hpp"
#include "rkec/wire.hpp"

namespace rkec {

namespace {

uint64_t tail_mask(uint32_t bits) {
    const uint32_t rem = bits % 64;
    return rem == 0 ? ~0ull : (1ull << rem) - 1;
}

}  // namespace

BitVector BitVector::random(uint32_t size, Rng& rng) {
    BitVector v(size);
    for (auto& w : v.words_) w = rng.next();
    if (!v.words_.empty()) v.words_.back() &= tail_mask(size);
    return v;
}

uint32_t BitVector::popcount() const {
    uint32_t n = 0;
    for (uint64_t w : words_) n += static_cast<uint32_t>(std::popcount(w));
    return n;
}

bool BitVector::any() const {
    for (uint64_t w : words_)
        if (w) return true;
    return false;
}

BitVector& BitVector::operator^=(const BitVector& o) {
    assert(size_ == o.size_);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

BitVector BitVector::slice(uint32_t begin, uint32_t end) const {
    assert(begin <= end && end <= size_);
    BitVector out(end - begin);
    for (uint32_t i = begin; i < end; ++i)
        if (get(i)) out.set(i - begin, true);
    return out;
}

BitVector BitVector::concat(const BitVector& a, const BitVector& b) {
    BitVector out(a.size() + b.size());
    for (uint32_t i = 0; i < a.size(); ++i)
        if (a.get(i)) out.set(i, true);
    for (uint32_t i = 0; i < b.size(); ++i)
        if (b.get(i)) out.set(a.size() + i, true);
    return out;
}

BitMatrix BitMatrix::identity(uint32_t n) {
    BitMatrix m(n, n);
    for (uint32_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::random(uint32_t rows, uint32_t cols, Rng& rng) {
    BitMatrix m(rows, cols);
    const uint64_t mask = tail_mask(cols);
    for (uint32_t r = 0; r < rows; ++r) {
        auto row = m.row(r);
        for (auto& w : row) w = rng.next();
        row.back() &= mask;
    }
    return m;
}

BitMatrix BitMatrix::selection(uint32_t cols, std::span<const uint32_t> image) {
    BitMatrix m(static_cast<uint32_t>(image.size()), cols);
    for (uint32_t r = 0; r < image.size(); ++r) {
        assert(image[r] < cols);
        m.set(r, image[r], true);
    }
    return m;
}

BitMatrix BitMatrix::permutation(std::span<const uint32_t> image) {
    return selection(static_cast<uint32_t>(image.size()), image);
}

BitMatrix BitMatrix::random_permutation(uint32_t n, Rng& rng) {
    return permutation(rng.permutation(n));
}

void BitMatrix::swap_rows(uint32_t a, uint32_t b) {
    if (a == b) return;
    auto ra = row(a), rb = row(b);
    for (uint32_t w = 0; w < wpr_; ++w) std::swap(ra[w], rb[w]);
}

void BitMatrix::xor_row_from(uint32_t dst, uint32_t src) {
    auto rd = row(dst);
    auto rs = row(src);
    for (uint32_t w = 0; w < wpr_; ++w) rd[w] ^= rs[w];
}

BitVector BitMatrix::row_vector(uint32_t r) const {
    BitVector v(cols_);
    auto src = row(r);
    auto dst = v.words();
    for (uint32_t w = 0; w < wpr_; ++w) dst[w] = src[w];
    return v;
}

void BitMatrix::set_row(uint32_t r, const BitVector& v) {
    assert(v.size() == cols_);
    auto dst = row(r);
    auto src = v.words();
    for (uint32_t w = 0; w < wpr_; ++w) dst[w] = src[w];
}

BitVector BitMatrix::column(uint32_t c) const {
    BitVector v(rows_);
    for (uint32_t r = 0; r < rows_; ++r)
        if (get(r, c)) v.set(r, true);
    return v;
}

void BitMatrix::paste(uint32_t row_off, uint32_t col_off, const BitMatrix& src) {
    assert(row_off + src.rows() <= rows_ && col_off + src.cols() <= cols_);
    for (uint32_t r = 0; r < src.rows(); ++r)
        for (uint32_t c = 0; c < src.cols(); ++c)
            set(row_off + r, col_off + c, src.get(r, c));
}

BitMatrix mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("mul: dimension mismatch, " + std::to_string(a.rows()) +
                                    "x" + std::to_string(a.cols()) + " times " +
                                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    BitMatrix out(a.rows(), b.cols());
    const uint32_t owpr = out.words_per_row();
    for (uint32_t i = 0; i < a.rows(); ++i) {
        auto arow = a.row(i);
        auto orow = out.row(i);
        for (uint32_t w = 0; w < a.words_per_row(); ++w) {
            uint64_t bits = arow[w];
            while (bits) {
                const uint32_t k = (w << 6) + static_cast<uint32_t>(std::countr_zero(bits));
                bits &= bits - 1;
                auto brow = b.row(k);
                for (uint32_t j = 0; j < owpr; ++j) orow[j] ^= brow[j];
            }
        }
    }
    return out;
}

BitVector mat_vec(const BitMatrix& a, const BitVector& x) {
    if (a.cols() != x.size())
        throw std::invalid_argument("mat_vec: dimension mismatch, " + std::to_string(a.rows()) +
                                    "x" + std::to_string(a.cols()) + " times length " +
                                    std::to_string(x.size()));
    BitVector out(a.rows());
    auto xw = x.words();
    for (uint32_t i = 0; i < a.rows(); ++i) {
        auto arow = a.row(i);
        uint32_t acc = 0;
        for (uint32_t w = 0; w < a.words_per_row(); ++w)
            acc ^= static_cast<uint32_t>(std::popcount(arow[w] & xw[w]));
        if (acc & 1) out.set(i, true);
    }
    return out;
}

BitMatrix transpose(const BitMatrix& a) {
    BitMatrix out(a.cols(), a.rows());
    for (uint32_t r = 0; r < a.rows(); ++r)
        for (uint32_t c = 0; c < a.cols(); ++c)
            if (a.get(r, c)) out.set(c, r, true);
    return out;
}

BitMatrix operator^(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("xor: dimension mismatch");
    BitMatrix out = a;
    for (uint32_t r = 0; r < a.rows(); ++r) {
        auto orow = out.row(r);
        auto brow = b.row(r);
        for (uint32_t w = 0; w < a.words_per_row(); ++w) orow[w] ^= brow[w];
    }
    return out;
}

std::optional<BitMatrix> invert(const BitMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("invert: matrix not square");
    const uint32_t n = a.rows();
    // Gauss-Jordan on the augmented matrix [a | I].
    BitMatrix work(n, 2 * n);
    work.paste(0, 0, a);
    for (uint32_t i = 0; i < n; ++i) work.set(i, n + i, true);
    for (uint32_t c = 0; c < n; ++c) {
        uint32_t pivot = n;
        for (uint32_t r = c; r < n; ++r) {
            if (work.get(r, c)) {
                pivot = r;
                break;
            }
        }
        if (pivot == n) return std::nullopt;
        work.swap_rows(c, pivot);
        for (uint32_t r = 0; r < n; ++r)
            if (r != c && work.get(r, c)) work.xor_row_from(r, c);
    }
    BitMatrix out(n, n);
    for (uint32_t r = 0; r < n; ++r)
        for (uint32_t c = 0; c < n; ++c) out.set(r, c, work.get(r, n + c));
    return out;
}

uint32_t rank(const BitMatrix& a) {
    BitMatrix work = a;
    const uint32_t rows = a.rows(), cols = a.cols();
    uint32_t rk = 0;
    for (uint32_t c = 0; c < cols && rk < rows; ++c) {
        uint32_t pivot = rows;
        for (uint32_t r = rk; r < rows; ++r) {
            if (work.get(r, c)) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows) continue;
        work.swap_rows(rk, pivot);
        for (uint32_t r = rk + 1; r < rows; ++r)
            if (work.get(r, c)) work.xor_row_from(r, rk);
        ++rk;
    }
    return rk;
}

BitMatrix vconcat(const BitMatrix& top, const BitMatrix& bottom) {
    if (top.cols() != bottom.cols()) throw std::invalid_argument("vconcat: column mismatch");
    BitMatrix out(top.rows() + bottom.rows(), top.cols());
    out.paste(0, 0, top);
    out.paste(top.rows(), 0, bottom);
    return out;
}

BitMatrix block2x2(const BitMatrix& tl, const BitMatrix& tr, const BitMatrix& bl,
                   const BitMatrix& br) {
    if (tl.rows() != tr.rows() || bl.rows() != br.rows() || tl.cols() != bl.cols() ||
        tr.cols() != br.cols())
        throw std::invalid_argument("block2x2: shape mismatch");
    BitMatrix out(tl.rows() + bl.rows(), tl.cols() + tr.cols());
    out.paste(0, 0, tl);
    out.paste(0, tl.cols(), tr);
    out.paste(tl.rows(), 0, bl);
    out.paste(tl.rows(), tl.cols(), br);
    return out;
}

void write_bitmatrix(std::ostream& os, const BitMatrix& m) {
    os.write("RKB1", 4);
    wire::write_u32(os, m.rows());
    wire::write_u32(os, m.cols());
    const uint32_t row_bytes = (m.cols() + 7) / 8;
    std::vector<char> buf(row_bytes);
    for (uint32_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        for (uint32_t b = 0; b < row_bytes; ++b)
            buf[b] = static_cast<char>((row[b >> 3] >> (8 * (b & 7))) & 0xff);
        os.write(buf.data(), row_bytes);
    }
}

BitMatrix read_bitmatrix(std::istream& is) {
    wire::expect_magic(is, "RKB1", "bit matrix");
    const uint32_t rows = wire::read_u32(is, "bit matrix rows");
    const uint32_t cols = wire::read_u32(is, "bit matrix cols");
    if (rows > (1u << 24) || cols > (1u << 24))
        throw FormatError("bit matrix dimensions out of range");
    BitMatrix m(rows, cols);
    const uint32_t row_bytes = (cols + 7) / 8;
    const uint64_t mask = tail_mask(cols);
    std::vector<char> buf(row_bytes);
    for (uint32_t r = 0; r < rows; ++r) {
        wire::read_exact(is, buf.data(), row_bytes, "bit matrix row");
        auto row = m.row(r);
        for (uint32_t b = 0; b < row_bytes; ++b)
            row[b >> 3] |= static_cast<uint64_t>(static_cast<uint8_t>(buf[b])) << (8 * (b & 7));
        if ((row.back() & ~mask) != 0) throw FormatError("bit matrix has nonzero padding bits");
    }
    return m;
}

}  // namespace rkec
