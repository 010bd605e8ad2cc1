#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mtst/rng.hpp"

using namespace mtst;

TEST_CASE("rng is deterministic per seed") {
    Rng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        uint64_t va = a.next_u64(), vb = b.next_u64(), vc = c.next_u64();
        all_equal = all_equal && (va == vb);
        any_diff = any_diff || (va != vc);
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("rng state save/restore replays the stream") {
    Rng a(7);
    a.next_u64();
    auto snapshot = a.state();
    uint64_t x1 = a.next_u64(), x2 = a.next_u64();
    Rng b;
    b.set_state(snapshot);
    CHECK(b.next_u64() == x1);
    CHECK(b.next_u64() == x2);
}

TEST_CASE("uniform stays in [0,1) and normal has sane moments") {
    Rng rng(123);
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    double mean = sum / n, var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.03);
    CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("shuffle permutes deterministically") {
    std::vector<int> v1{1, 2, 3, 4, 5, 6, 7, 8}, v2 = v1, sorted = v1;
    Rng a(9), b(9);
    a.shuffle(v1);
    b.shuffle(v2);
    CHECK(v1 == v2);
    auto s = v1;
    std::sort(s.begin(), s.end());
    CHECK(s == sorted);
}
