#include "seiscontrol/rng.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace seiscontrol;

TEST(Rng, StreamsAreReproducible) {
    Rng a = make_stream(7, 3, 11);
    Rng b = make_stream(7, 3, 11);
    for (int i = 0; i < 100; ++i) ASSERT_EQ(a(), b());
}

TEST(Rng, StreamsDifferInEveryCoordinate) {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t s : {0u, 1u, 2u})
        for (std::uint64_t r : {0u, 1u, 2u})
            for (std::uint64_t w : {0u, 1u, 2u}) firsts.insert(make_stream(s, r, w)());
    EXPECT_EQ(firsts.size(), 27u);
    // swapping run and window must not alias
    EXPECT_NE(make_stream(5, 1, 2)(), make_stream(5, 2, 1)());
}

TEST(Rng, Uniform01RangeAndMean) {
    Rng rng = make_stream(1, 0, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = uniform01(rng);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // standard error of the mean is 1/sqrt(12 n)
    EXPECT_NEAR(sum / n, 0.5, 5.0 / std::sqrt(12.0 * n));
}

TEST(Rng, Mix64IsABijectionOnSamples) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t x = 0; x < 10000; ++x) seen.insert(mix64(x));
    EXPECT_EQ(seen.size(), 10000u);
}
