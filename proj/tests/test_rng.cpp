#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "cimz/rng.hpp"

using namespace cimz;

TEST_CASE("rng: same seed, same stream") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("rng: different seeds diverge") {
    Rng a(1), b(2);
    int same = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    REQUIRE(same == 0);
}

TEST_CASE("rng: unit draws live in their half-open ranges") {
    Rng r(7);
    for (int i = 0; i < 20000; ++i) {
        const double u = r.next_unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double v = r.next_unit_open0();
        REQUIRE(v > 0.0);
        REQUIRE(v <= 1.0);
    }
}

TEST_CASE("rng: normal moments over 1e5 draws") {
    Rng r(99);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = r.next_normal();
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    REQUIRE(std::fabs(mean) < 0.02);
    REQUIRE(std::fabs(var - 1.0) < 0.05);
}

TEST_CASE("rng: mix_seed separates child streams") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t k = 0; k < 100; ++k) seen.insert(mix_seed(42, k));
    REQUIRE(seen.size() == 100);
    REQUIRE(mix_seed(42, 7) != mix_seed(43, 7));
}
