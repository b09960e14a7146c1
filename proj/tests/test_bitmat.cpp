#include <doctest.h>

#include <cstdint>
#include <set>
#include <sstream>
#include <vector>

#include "rkec/bitmat.hpp"
#include "rkec/errors.hpp"
#include "rkec/rng.hpp"

using rkec::BitMatrix;
using rkec::BitVector;
using rkec::FormatError;
using rkec::Rng;
using rkec::read_bitmatrix;

namespace {

// Independent entry-by-entry product.
BitMatrix slow_mul(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows(), b.cols());
    for (uint32_t i = 0; i < a.rows(); ++i)
        for (uint32_t j = 0; j < b.cols(); ++j) {
            bool v = false;
            for (uint32_t k = 0; k < a.cols(); ++k) v ^= a.get(i, k) && b.get(k, j);
            out.set(i, j, v);
        }
    return out;
}

BitVector slow_mat_vec(const BitMatrix& a, const BitVector& x) {
    BitVector out(a.rows());
    for (uint32_t i = 0; i < a.rows(); ++i) {
        bool v = false;
        for (uint32_t k = 0; k < a.cols(); ++k) v ^= a.get(i, k) && x.get(k);
        out.set(i, v);
    }
    return out;
}

// Row-space size by enumerating all row combinations.
size_t row_space_size(const BitMatrix& a) {
    std::set<std::vector<uint64_t>> space;
    for (uint64_t mask = 0; mask < (1ull << a.rows()); ++mask) {
        BitVector acc(a.cols());
        for (uint32_t r = 0; r < a.rows(); ++r)
            if ((mask >> r) & 1) acc ^= a.row_vector(r);
        space.insert({acc.words().begin(), acc.words().end()});
    }
    return space.size();
}

BitMatrix random_invertible(uint32_t n, Rng& rng) {
    for (;;) {
        BitMatrix m = BitMatrix::random(n, n, rng);
        if (rkec::invert(m)) return m;
    }
}

std::vector<uint64_t> key_of(const BitMatrix& m) {
    std::vector<uint64_t> k;
    for (uint32_t r = 0; r < m.rows(); ++r)
        for (uint64_t w : m.row(r)) k.push_back(w);
    return k;
}

}  // namespace

TEST_SUITE("bitmat") {

TEST_CASE("vector basics keep padding clean") {
    BitVector v(70);
    v.set(0, true);
    v.set(69, true);
    CHECK(v.get(0));
    CHECK(v.get(69));
    CHECK_FALSE(v.get(35));
    CHECK(v.popcount() == 2);
    v.flip(69);
    CHECK(v.popcount() == 1);
    CHECK(v.any());
    v.flip(0);
    CHECK_FALSE(v.any());
    // after any sequence of operations the padding bits stay zero
    Rng rng(1);
    BitVector w = BitVector::random(70, rng);
    w ^= BitVector::random(70, rng);
    CHECK((w.words()[1] >> 6) == 0);
}

TEST_CASE("slice and concat are inverses") {
    Rng rng(2);
    const BitVector v = BitVector::random(100, rng);
    const BitVector a = v.slice(0, 37), b = v.slice(37, 100);
    CHECK(a.size() == 37);
    CHECK(b.size() == 63);
    CHECK(BitVector::concat(a, b) == v);
    for (uint32_t i = 0; i < 37; ++i) CHECK(a.get(i) == v.get(i));
    for (uint32_t i = 0; i < 63; ++i) CHECK(b.get(i) == v.get(37 + i));
}

TEST_CASE("identity times anything is identity") {
    Rng rng(3);
    const BitMatrix m = BitMatrix::random(3, 4, rng);
    CHECK(mul(BitMatrix::identity(3), m) == m);
}

TEST_CASE("permutation products compose indices") {
    const std::vector<uint32_t> p1{2, 0, 1}, p2{1, 2, 0};
    const BitMatrix prod = mul(BitMatrix::permutation(p1), BitMatrix::permutation(p2));
    std::vector<uint32_t> composed(3);
    for (uint32_t i = 0; i < 3; ++i) composed[i] = p2[p1[i]];
    CHECK(prod == BitMatrix::permutation(composed));
}

TEST_CASE("mul matches the entry-by-entry oracle") {
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        const BitMatrix a = BitMatrix::random(5, 6, rng);
        const BitMatrix b = BitMatrix::random(6, 4, rng);
        CHECK(mul(a, b) == slow_mul(a, b));
    }
    // wide case exercising multiple words per row
    const BitMatrix a = BitMatrix::random(9, 150, rng);
    const BitMatrix b = BitMatrix::random(150, 70, rng);
    CHECK(mul(a, b) == slow_mul(a, b));
}

TEST_CASE("mul is associative") {
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        const BitMatrix a = BitMatrix::random(7, 16, rng);
        const BitMatrix b = BitMatrix::random(16, 11, rng);
        const BitMatrix c = BitMatrix::random(11, 9, rng);
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    }
}

TEST_CASE("mat_vec: identity, basis selection, and oracle") {
    Rng rng(6);
    const BitVector x = BitVector::random(8, rng);
    CHECK(mat_vec(BitMatrix::identity(8), x) == x);

    const BitMatrix a = BitMatrix::random(8, 8, rng);
    for (uint32_t k = 0; k < 8; ++k) {
        BitVector onehot(8);
        onehot.set(k, true);
        CHECK(mat_vec(a, onehot) == a.column(k));
    }
    for (int i = 0; i < 20; ++i) {
        const BitMatrix m = BitMatrix::random(8, 8, rng);
        const BitVector v = BitVector::random(8, rng);
        CHECK(mat_vec(m, v) == slow_mat_vec(m, v));
    }
}

TEST_CASE("mat_vec is linear") {
    Rng rng(7);
    const BitMatrix a = BitMatrix::random(33, 70, rng);
    for (int i = 0; i < 20; ++i) {
        const BitVector x = BitVector::random(70, rng), y = BitVector::random(70, rng);
        CHECK(mat_vec(a, x ^ y) == (mat_vec(a, x) ^ mat_vec(a, y)));
    }
}

TEST_CASE("invert handles identity, involutions, and random matrices") {
    CHECK(*rkec::invert(BitMatrix::identity(5)) == BitMatrix::identity(5));

    BitMatrix u(2, 2);
    u.set(0, 0, true);
    u.set(0, 1, true);
    u.set(1, 1, true);
    CHECK(*rkec::invert(u) == u);

    Rng rng(8);
    int found = 0;
    while (found < 200) {
        const BitMatrix a = BitMatrix::random(16, 16, rng);
        const auto inv = rkec::invert(a);
        if (!inv) continue;
        ++found;
        CHECK(mul(a, *inv) == BitMatrix::identity(16));
        CHECK(mul(*inv, a) == BitMatrix::identity(16));
        CHECK(*rkec::invert(*inv) == a);
    }
}

TEST_CASE("invert reports singular inputs") {
    BitMatrix z(3, 3);  // all zero
    CHECK_FALSE(rkec::invert(z).has_value());
    BitMatrix dup(2, 2);  // equal rows
    dup.set(0, 0, true);
    dup.set(1, 0, true);
    CHECK_FALSE(rkec::invert(dup).has_value());
}

TEST_CASE("rank: zero, identity, and row-space oracle") {
    CHECK(rkec::rank(BitMatrix(4, 4)) == 0);
    CHECK(rkec::rank(BitMatrix::identity(5)) == 5);
    Rng rng(9);
    for (int i = 0; i < 30; ++i) {
        const BitMatrix a = BitMatrix::random(6, 9, rng);
        CHECK((1ull << rkec::rank(a)) == row_space_size(a));
    }
}

TEST_CASE("right-multiplying by a permutation permutes the matrix set") {
    // over all 2x2 matrices, M -> M*Y is a bijection for each permutation Y
    for (const std::vector<uint32_t>& image :
         {std::vector<uint32_t>{0, 1}, std::vector<uint32_t>{1, 0}}) {
        const BitMatrix y = BitMatrix::permutation(image);
        std::set<std::vector<uint64_t>> outputs;
        for (uint32_t bits = 0; bits < 16; ++bits) {
            BitMatrix m(2, 2);
            for (uint32_t e = 0; e < 4; ++e) m.set(e / 2, e % 2, (bits >> e) & 1);
            outputs.insert(key_of(mul(m, y)));
        }
        CHECK(outputs.size() == 16);
    }
}

TEST_CASE("random_permutation has unit row and column sums") {
    Rng rng(10);
    CHECK(BitMatrix::random_permutation(1, rng) == BitMatrix::identity(1));
    for (int i = 0; i < 20; ++i) {
        const BitMatrix p = BitMatrix::random_permutation(9, rng);
        for (uint32_t r = 0; r < 9; ++r) CHECK(p.row_vector(r).popcount() == 1);
        for (uint32_t c = 0; c < 9; ++c) CHECK(p.column(c).popcount() == 1);
    }
    Rng a(11), b(11);
    CHECK(BitMatrix::random_permutation(20, a) == BitMatrix::random_permutation(20, b));
}

TEST_CASE("selection places one bit per row at the image column") {
    const std::vector<uint32_t> image{4, 0, 2};
    const BitMatrix s = BitMatrix::selection(6, image);
    CHECK(s.rows() == 3);
    CHECK(s.cols() == 6);
    for (uint32_t r = 0; r < 3; ++r) {
        CHECK(s.row_vector(r).popcount() == 1);
        CHECK(s.get(r, image[r]));
    }
}

TEST_CASE("transpose distributes over products") {
    Rng rng(12);
    const BitMatrix a = BitMatrix::random(7, 70, rng);
    const BitMatrix b = BitMatrix::random(70, 5, rng);
    CHECK(transpose(mul(a, b)) == mul(transpose(b), transpose(a)));
    CHECK(transpose(transpose(a)) == a);
}

TEST_CASE("vconcat and block2x2 position entries correctly") {
    Rng rng(13);
    const BitMatrix top = BitMatrix::random(3, 5, rng), bottom = BitMatrix::random(2, 5, rng);
    const BitMatrix v = vconcat(top, bottom);
    REQUIRE(v.rows() == 5);
    for (uint32_t c = 0; c < 5; ++c) {
        for (uint32_t r = 0; r < 3; ++r) CHECK(v.get(r, c) == top.get(r, c));
        for (uint32_t r = 0; r < 2; ++r) CHECK(v.get(3 + r, c) == bottom.get(r, c));
    }
    const BitMatrix tl = BitMatrix::random(2, 3, rng), tr = BitMatrix::random(2, 4, rng);
    const BitMatrix bl = BitMatrix::random(5, 3, rng), br = BitMatrix::random(5, 4, rng);
    const BitMatrix blk = rkec::block2x2(tl, tr, bl, br);
    REQUIRE(blk.rows() == 7);
    REQUIRE(blk.cols() == 7);
    for (uint32_t r = 0; r < 2; ++r)
        for (uint32_t c = 0; c < 3; ++c) CHECK(blk.get(r, c) == tl.get(r, c));
    for (uint32_t r = 0; r < 2; ++r)
        for (uint32_t c = 0; c < 4; ++c) CHECK(blk.get(r, 3 + c) == tr.get(r, c));
    for (uint32_t r = 0; r < 5; ++r)
        for (uint32_t c = 0; c < 3; ++c) CHECK(blk.get(2 + r, c) == bl.get(r, c));
    for (uint32_t r = 0; r < 5; ++r)
        for (uint32_t c = 0; c < 4; ++c) CHECK(blk.get(2 + r, 3 + c) == br.get(r, c));
}

TEST_CASE("paste copies a submatrix in place") {
    Rng rng(14);
    BitMatrix dst(6, 9);
    const BitMatrix src = BitMatrix::random(2, 3, rng);
    dst.paste(3, 5, src);
    for (uint32_t r = 0; r < 2; ++r)
        for (uint32_t c = 0; c < 3; ++c) CHECK(dst.get(3 + r, 5 + c) == src.get(r, c));
    CHECK_FALSE(dst.get(0, 0));
}

TEST_CASE("serialization roundtrips bit-exactly") {
    Rng rng(15);
    for (uint32_t cols : {1u, 7u, 8u, 64u, 65u, 130u}) {
        const BitMatrix m = BitMatrix::random(5, cols, rng);
        std::stringstream ss;
        write_bitmatrix(ss, m);
        CHECK(read_bitmatrix(ss) == m);
    }
}

TEST_CASE("deserialization rejects malformed streams") {
    Rng rng(16);
    const BitMatrix m = BitMatrix::random(3, 10, rng);
    std::stringstream good;
    write_bitmatrix(good, m);
    const std::string bytes = good.str();

    std::string bad_magic = bytes;
    bad_magic[0] = 'X';
    std::stringstream s1(bad_magic);
    CHECK_THROWS_AS(read_bitmatrix(s1), FormatError);

    std::stringstream s2(bytes.substr(0, bytes.size() - 1));
    CHECK_THROWS_AS(read_bitmatrix(s2), FormatError);

    // force a nonzero bit into a row's padding area (cols=10 -> 2 bytes/row,
    // bits 10..15 are padding)
    std::string bad_pad = bytes;
    bad_pad[bad_pad.size() - 1] |= static_cast<char>(0x80);
    std::stringstream s3(bad_pad);
    CHECK_THROWS_AS(read_bitmatrix(s3), FormatError);
}

TEST_CASE("dimension mismatches are rejected") {
    Rng rng(17);
    const BitMatrix a = BitMatrix::random(3, 4, rng);
    const BitMatrix b = BitMatrix::random(5, 2, rng);
    CHECK_THROWS_AS(mul(a, b), std::invalid_argument);
    CHECK_THROWS_AS(mat_vec(a, BitVector(5)), std::invalid_argument);
    CHECK_THROWS_AS(rkec::invert(a), std::invalid_argument);
    CHECK_THROWS_AS(vconcat(a, b), std::invalid_argument);
    CHECK_THROWS_AS((a ^ b), std::invalid_argument);
}

TEST_CASE("random matrices are reproducible and reach both bit values") {
    Rng a(18), b(18);
    CHECK(BitMatrix::random(20, 33, a) == BitMatrix::random(20, 33, b));
    const BitMatrix m = BitMatrix::random(16, 16, a);
    uint32_t ones = 0;
    for (uint32_t r = 0; r < 16; ++r) ones += m.row_vector(r).popcount();
    CHECK(ones > 64);
    CHECK(ones < 192);
}

}  // TEST_SUITE
