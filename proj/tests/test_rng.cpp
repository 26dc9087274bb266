#include <catch2/catch.hpp>

#include <cmath>
#include <set>

#include "perc/rng.hpp"

using namespace perc;

TEST_CASE("philox blocks are pure functions of key and counter") {
    const auto a = philox::block(42, {1, 2, 3, 4});
    const auto b = philox::block(42, {1, 2, 3, 4});
    REQUIRE(a == b);
    REQUIRE(philox::block(43, {1, 2, 3, 4}) != a);
    REQUIRE(philox::block(42, {2, 2, 3, 4}) != a);
    REQUIRE(philox::block(42, {1, 2, 3, 5}) != a);
}

TEST_CASE("streams replay identically and differ across addresses") {
    RandomStream s1(7, 100, 55);
    RandomStream s2(7, 100, 55);
    for (int i = 0; i < 100; ++i) REQUIRE(s1.next_u64() == s2.next_u64());

    RandomStream other_sample(7, 101, 55);
    RandomStream other_stream(7, 100, 56);
    RandomStream other_seed(8, 100, 55);
    RandomStream base(7, 100, 55);
    const uint64_t first = base.next_u64();
    REQUIRE(other_sample.next_u64() != first);
    REQUIRE(other_stream.next_u64() != first);
    REQUIRE(other_seed.next_u64() != first);
}

TEST_CASE("consecutive sample streams do not collide") {
    std::set<uint64_t> seen;
    for (uint64_t i = 0; i < 100000; ++i) {
        RandomStream s(123, i, 9);
        seen.insert(s.next_u64());
    }
    REQUIRE(seen.size() == 100000);
}

TEST_CASE("uniforms look uniform") {
    RandomStream s(2024, 0, 0);
    double sum = 0, sumsq = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = s.next_unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sumsq += u * u;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    REQUIRE(mean == Approx(0.5).margin(0.005));
    REQUIRE(var == Approx(1.0 / 12.0).margin(0.005));
}

TEST_CASE("open-unit draws avoid the endpoints") {
    RandomStream s(5, 5, 5);
    for (int i = 0; i < 10000; ++i) {
        const double u = s.next_open_unit();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("poisson inversion has the right first two moments") {
    const double lambda = 2.0;
    double sum = 0, sumsq = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        RandomStream s(77, static_cast<uint64_t>(i), 1);
        const double k = s.poisson(lambda);
        sum += k;
        sumsq += k * k;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    // mean and variance both equal lambda; 4 sigma of the sample mean
    REQUIRE(mean == Approx(lambda).margin(4.0 * std::sqrt(lambda / n)));
    REQUIRE(var == Approx(lambda).margin(0.05));
}

TEST_CASE("dust-free fraction matches exp(-lambda) at lambda = ln 2") {
    const double lambda = std::log(2.0);
    int empty = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        RandomStream s(31, static_cast<uint64_t>(i), 2);
        empty += s.poisson(lambda) == 0;
    }
    REQUIRE(static_cast<double>(empty) / n == Approx(0.5).margin(0.01));
}

TEST_CASE("poisson(0) is always zero") {
    RandomStream s(1, 1, 1);
    for (int i = 0; i < 100; ++i) REQUIRE(s.poisson(0.0) == 0);
}
