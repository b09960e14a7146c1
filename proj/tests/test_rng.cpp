#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "rkec/rng.hpp"

using rkec::Rng;

TEST_SUITE("rng") {

TEST_CASE("same seed and stream reproduce the same sequence") {
    Rng a(123, 0), b(123, 0);
    for (int i = 0; i < 200; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("different streams of one seed diverge") {
    Rng a(123, 0), b(123, 1);
    int same = 0;
    for (int i = 0; i < 64; ++i) same += a.next() == b.next();
    CHECK(same == 0);
}

TEST_CASE("different seeds diverge") {
    Rng a(1, 0), b(2, 0);
    int same = 0;
    for (int i = 0; i < 64; ++i) same += a.next() == b.next();
    CHECK(same == 0);
}

TEST_CASE("below stays in range and reaches every residue") {
    Rng rng(7);
    std::vector<int> seen(8, 0);
    for (int i = 0; i < 1000; ++i) {
        const uint64_t v = rng.below(8);
        REQUIRE(v < 8);
        ++seen[v];
    }
    for (int c : seen) CHECK(c > 0);
    CHECK(rng.below(1) == 0);
}

TEST_CASE("real lies in the unit interval") {
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.real();
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
    }
}

TEST_CASE("bit produces both values") {
    Rng rng(11);
    int ones = 0;
    for (int i = 0; i < 1000; ++i) ones += rng.bit();
    CHECK(ones > 400);
    CHECK(ones < 600);
}

TEST_CASE("bernoulli endpoints are deterministic") {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        CHECK_FALSE(rng.bernoulli(0.0));
        CHECK(rng.bernoulli(1.0));
    }
}

TEST_CASE("exponential is nonnegative with roughly the requested mean") {
    Rng rng(17);
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double v = rng.exponential(2.0);
        REQUIRE(v >= 0.0);
        sum += v;
    }
    CHECK(sum / n == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("normal has roughly the requested moments") {
    Rng rng(19);
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double v = rng.normal(3.0, 2.0);
        sum += v;
        sq += v * v;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(mean == doctest::Approx(3.0).epsilon(0.02));
    CHECK(var == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("permutation returns a permutation and reproduces under seed") {
    Rng rng(23);
    const std::vector<uint32_t> p = rng.permutation(40);
    REQUIRE(p.size() == 40);
    std::vector<uint32_t> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (uint32_t i = 0; i < 40; ++i) CHECK(sorted[i] == i);

    Rng again(23);
    CHECK(again.permutation(40) == p);

    Rng one(29);
    CHECK(one.permutation(1) == std::vector<uint32_t>{0});
}

TEST_CASE("permutation of small n covers all orderings") {
    Rng rng(31);
    std::set<std::vector<uint32_t>> seen;
    for (int i = 0; i < 200; ++i) seen.insert(rng.permutation(3));
    CHECK(seen.size() == 6);
}

TEST_CASE("sample_distinct yields a sorted subset of the right size") {
    Rng rng(37);
    for (int i = 0; i < 200; ++i) {
        const std::vector<uint32_t> s = rng.sample_distinct(5, 20);
        REQUIRE(s.size() == 5);
        REQUIRE(std::is_sorted(s.begin(), s.end()));
        REQUIRE(std::adjacent_find(s.begin(), s.end()) == s.end());
        REQUIRE(s.back() < 20);
    }
    const std::vector<uint32_t> all = rng.sample_distinct(6, 6);
    CHECK(all == std::vector<uint32_t>{0, 1, 2, 3, 4, 5});
    CHECK(rng.sample_distinct(0, 6).empty());
}

TEST_CASE("sample_distinct eventually hits every element") {
    Rng rng(41);
    std::vector<int> seen(10, 0);
    for (int i = 0; i < 400; ++i)
        for (uint32_t v : rng.sample_distinct(3, 10)) ++seen[v];
    for (int c : seen) CHECK(c > 0);
}

}  // TEST_SUITE
