#include "hiconvex/interval.hpp"
#include "hiconvex/parallel.hpp"
#include "hiconvex/quadrature.hpp"
#include "hiconvex/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <set>
#include <vector>

namespace hiconvex {
namespace {

TEST(Interval, RejectsReversedEndpoints) {
    EXPECT_THROW(Interval(1.0, 0.0), std::invalid_argument);
    EXPECT_NO_THROW(Interval(0.5, 0.5));
}

TEST(Interval, GeometryAccessors) {
    const Interval iv(1.0, 4.0);
    EXPECT_DOUBLE_EQ(iv.length(), 3.0);
    EXPECT_DOUBLE_EQ(iv.midpoint(), 2.5);
    EXPECT_TRUE(iv.contains(1.0));
    EXPECT_TRUE(iv.contains(4.0));
    EXPECT_FALSE(iv.contains(4.0 + 1e-6));
    EXPECT_TRUE(iv.contains(4.0 + 1e-6, 1e-5));
    EXPECT_TRUE(iv.contains(Interval(2.0, 3.0)));
    EXPECT_FALSE(iv.contains(Interval(0.0, 3.0)));
}

TEST(Rng, SameSeedSameStream) {
    Rng a(12345), b(12345);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, Uniform01StaysInUnitInterval) {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Rng, UniformRespectsBounds) {
    Rng rng(11);
    double lo_seen = 1e300, hi_seen = -1e300;
    for (int i = 0; i < 10000; ++i) {
        const double v = rng.uniform(-2.0, 5.0);
        EXPECT_GE(v, -2.0);
        EXPECT_LT(v, 5.0);
        lo_seen = std::min(lo_seen, v);
        hi_seen = std::max(hi_seen, v);
    }
    EXPECT_LT(lo_seen, -1.5);
    EXPECT_GT(hi_seen, 4.5);
}

TEST(Rng, ExponentialHasUnitMean) {
    Rng rng(3);
    double sum = 0.0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) {
        const double e = rng.exponential();
        EXPECT_GE(e, 0.0);
        sum += e;
    }
    EXPECT_NEAR(sum / n, 1.0, 0.05);
}

TEST(Rng, UniformIntCoversRange) {
    Rng rng(5);
    std::set<long> seen;
    for (int i = 0; i < 2000; ++i) {
        const long v = rng.uniform_int(-3, 3);
        EXPECT_GE(v, -3);
        EXPECT_LE(v, 3);
        seen.insert(v);
    }
    EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, SplitIsStableAndSeparating) {
    EXPECT_EQ(Rng::split(42, 1), Rng::split(42, 1));
    EXPECT_NE(Rng::split(42, 1), Rng::split(42, 2));
    EXPECT_NE(Rng::split(42, 1), Rng::split(43, 1));
    // Derived streams must not coincide with each other.
    std::set<std::uint64_t> outs;
    for (std::uint64_t k = 0; k < 1000; ++k) outs.insert(Rng::split(9, k));
    EXPECT_EQ(outs.size(), 1000u);
}

TEST(Parallel, MinMatchesSerialScan) {
    Rng rng(17);
    std::vector<double> data(5000);
    for (auto& v : data) v = rng.uniform(-10.0, 10.0);
    data[1234] = -50.0;
    data[4321] = -50.0;  // duplicate minimum; smallest index must win

    const auto res = parallel_min(data.size(), [&](std::size_t i) { return data[i]; });
    EXPECT_DOUBLE_EQ(res.value, -50.0);
    EXPECT_EQ(res.index, 1234u);
}

TEST(Parallel, SingleThreadAgreesWithDefault) {
    std::vector<double> data(997);
    Rng rng(23);
    for (auto& v : data) v = rng.uniform(0.0, 1.0);

    const auto wide = parallel_min(data.size(), [&](std::size_t i) { return data[i]; });
    setenv("HICONVEX_THREADS", "1", 1);
    const auto narrow = parallel_min(data.size(), [&](std::size_t i) { return data[i]; });
    unsetenv("HICONVEX_THREADS");
    EXPECT_EQ(wide.index, narrow.index);
    EXPECT_DOUBLE_EQ(wide.value, narrow.value);
}

TEST(Parallel, EmptyRangeReturnsSentinel) {
    const auto res = parallel_min(0, [](std::size_t) { return 0.0; });
    EXPECT_EQ(res.index, 0u);
    EXPECT_TRUE(std::isinf(res.value));
}

TEST(Quadrature, PolynomialAndTrigReference) {
    EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 1.0), 1.0 / 3.0, 1e-10);
    EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, std::acos(-1.0)), 2.0, 1e-9);
    EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, -1.0, 2.0),
                std::exp(2.0) - std::exp(-1.0), 1e-8);
}

TEST(Quadrature, HandlesSquareRootSingularity) {
    EXPECT_NEAR(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0), 2.0 / 3.0, 1e-8);
}

TEST(Quadrature, ReportsNonconvergenceOnJump) {
    const auto step = [](double x) { return x < 1.0 / 3.0 ? 0.0 : 1.0; };
    try {
        integrate(step, 0.0, 1.0, 1e-16);
        FAIL() << "expected quadrature-nonconvergence";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("quadrature-nonconvergence"), std::string::npos);
    }
}

TEST(Quadrature, ReversedAndDegenerateRanges) {
    EXPECT_DOUBLE_EQ(integrate([](double) { return 5.0; }, 2.0, 2.0), 0.0);
}

} // namespace
} // namespace hiconvex
