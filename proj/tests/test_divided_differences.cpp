#include "hiconvex/divided_differences.hpp"
#include "hiconvex/function_models.hpp"
#include "hiconvex/rng.hpp"
#include "hiconvex/sample_grid.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace hiconvex {
namespace {

SampleGrid sample(const std::function<double(double)>& f, double a, double b, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
        ys[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    }
    return SampleGrid(std::move(xs), std::move(ys));
}

TEST(SampleGrid, RejectsUnsortedAbscissae) {
    EXPECT_THROW(SampleGrid({0.0, 2.0, 1.0}, {0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(SampleGrid, RejectsNearCoincidentNodes) {
    EXPECT_THROW(SampleGrid({0.0, 1e-12, 1.0}, {0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(SampleGrid, RejectsLengthMismatch) {
    EXPECT_THROW(SampleGrid({0.0, 1.0}, {0.0}), std::invalid_argument);
}

TEST(SampleGrid, AccessorsAndSpan) {
    const SampleGrid g({0.0, 0.5, 2.0}, {1.0, 2.0, 3.0});
    EXPECT_EQ(g.size(), 3u);
    EXPECT_DOUBLE_EQ(g.span(), 2.0);
    EXPECT_DOUBLE_EQ(g.x(1), 0.5);
    EXPECT_DOUBLE_EQ(g.y(2), 3.0);
}

TEST(DividedDifference, MonicCubicHasUnitLeadingDifference) {
    const SampleGrid g({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 8.0, 27.0});
    EXPECT_NEAR(divided_difference(g), 1.0, 1e-12);
}

TEST(DividedDifference, SlopeOfSquareIsNodeSum) {
    const SampleGrid g({1.0, 3.0}, {1.0, 9.0});
    EXPECT_DOUBLE_EQ(divided_difference(g), 4.0);
}

TEST(DividedDifference, ThirdDifferenceOfQuadraticVanishes) {
    Rng rng(101);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> xs;
        double x = rng.uniform(-5.0, -2.0);
        for (int i = 0; i < 4; ++i) {
            xs.push_back(x);
            x += rng.uniform(0.3, 2.0);
        }
        std::vector<double> ys;
        for (double v : xs) ys.push_back(2.0 - 3.0 * v + 0.7 * v * v);
        EXPECT_NEAR(divided_difference(SampleGrid(xs, ys)), 0.0, 1e-11);
    }
}

TEST(DividedDifference, InvariantUnderNodePermutations) {
    Rng rng(7);
    std::vector<double> xs, ys;
    double x = 0.0;
    for (int i = 0; i < 6; ++i) {
        x += rng.uniform(0.1, 1.0);
        xs.push_back(x);
        ys.push_back(rng.uniform(-3.0, 3.0));
    }
    const double base = divided_difference(xs, ys);
    std::vector<std::size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0u);
    for (int rep = 0; rep < 50; ++rep) {
        for (std::size_t i = idx.size(); i > 1; --i) {
            std::swap(idx[i - 1], idx[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(i) - 1))]);
        }
        std::vector<double> px, py;
        for (std::size_t i : idx) {
            px.push_back(xs[i]);
            py.push_back(ys[i]);
        }
        const double permuted = divided_difference(px, py);
        EXPECT_NEAR(permuted, base, 1e-12 * (1.0 + std::abs(base)));
    }
}

TEST(DividedDifference, ProductFormAgreesWithRecurrence) {
    Rng rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> xs, ys;
        double x = rng.uniform(-2.0, 0.0);
        const int n = 3 + static_cast<int>(rng.uniform_int(0, 4));
        for (int i = 0; i < n; ++i) {
            xs.push_back(x);
            ys.push_back(rng.uniform(-5.0, 5.0));
            x += rng.uniform(0.2, 1.5);
        }
        const double a = divided_difference(xs, ys);
        const double b = divided_difference_product_form(xs, ys);
        EXPECT_NEAR(a, b, 1e-10 * (1.0 + std::abs(a)));
    }
}

TEST(BuildTable, IdentityOrdinatesGiveUnitFirstRow) {
    const auto g = sample([](double x) { return x; }, 0.0, 5.0, 9);
    const auto table = build_table(g, 3);
    for (double v : table.row(1)) EXPECT_NEAR(v, 1.0, 1e-13);
    for (double v : table.row(2)) EXPECT_NEAR(v, 0.0, 1e-13);
}

TEST(BuildTable, ConstantOrdinatesVanishAboveOrderZero) {
    const auto g = sample([](double) { return 4.25; }, 0.0, 1.0, 7);
    const auto table = build_table(g, 4);
    for (int k = 1; k <= 4; ++k)
        for (double v : table.row(k)) EXPECT_NEAR(v, 0.0, 1e-13);
}

TEST(BuildTable, RowsMatchDirectWindowRecomputation) {
    Rng rng(19);
    std::vector<double> xs, ys;
    double x = 0.0;
    for (int i = 0; i < 10; ++i) {
        x += rng.uniform(0.1, 0.9);
        xs.push_back(x);
        ys.push_back(rng.uniform(-2.0, 2.0));
    }
    const SampleGrid g(xs, ys);
    const auto table = build_table(g, 4);
    EXPECT_EQ(table.max_order(), 4);
    for (int k = 0; k <= 4; ++k) {
        const auto& row = table.row(k);
        ASSERT_EQ(row.size(), xs.size() - static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::vector<double> wx(xs.begin() + static_cast<long>(i),
                                   xs.begin() + static_cast<long>(i) + k + 1);
            std::vector<double> wy(ys.begin() + static_cast<long>(i),
                                   ys.begin() + static_cast<long>(i) + k + 1);
            const double direct = divided_difference(wx, wy);
            EXPECT_NEAR(row[i], direct, 1e-11 * (1.0 + std::abs(direct)));
        }
    }
}

TEST(BuildTable, RejectsOrderBeyondNodeCount) {
    const auto g = sample([](double x) { return x; }, 0.0, 1.0, 4);
    EXPECT_THROW(build_table(g, 4), std::invalid_argument);
}

TEST(ConvexityVerdict, CubicSamplesAreOrderThreeConvex) {
    const auto g = sample([](double x) { return x * x * x; }, 0.0, 2.0, 20);
    const auto v = n_convexity_verdict(g, 3);
    EXPECT_TRUE(v.holds);
    EXPECT_GE(v.margin, -v.tol);
}

TEST(ConvexityVerdict, ConcaveMixtureSplitsByOrder) {
    // sqrt(x) - x^2 keeps positive third differences but negative second ones.
    const auto g = sample([](double x) { return std::sqrt(x) - x * x; }, 0.05, 1.5, 21);
    EXPECT_TRUE(n_convexity_verdict(g, 3).holds);
    EXPECT_FALSE(n_convexity_verdict(g, 2).holds);
}

TEST(ConvexityVerdict, SineFailsOrderThreeNearLeftEnd) {
    const auto g = sample([](double x) { return std::sin(x); }, 0.0, std::acos(-1.0), 25);
    const auto v = n_convexity_verdict(g, 3);
    EXPECT_FALSE(v.holds);
    EXPECT_LT(v.margin, 0.0);
    ASSERT_EQ(v.window_xs.size(), 4u);
    EXPECT_LT(v.window_xs.front(), 1.0);
}

TEST(ConvexityVerdict, ConsecutiveWindowsDecideAllSubsets) {
    // On small grids the consecutive-window verdict must match a brute-force
    // scan over every node subset of size order+1.
    Rng rng(71);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> xs, ys;
        double x = 0.0;
        const int n = 6 + static_cast<int>(rng.uniform_int(0, 4));
        for (int i = 0; i < n; ++i) {
            x += rng.uniform(0.1, 1.0);
            xs.push_back(x);
            // Mix of genuinely 3-convex samples and noisy ones.
            const double noise = (rep % 2 == 0) ? rng.uniform(-0.05, 0.05) : 0.0;
            ys.push_back(0.2 * x * x * x - x + noise);
        }
        const SampleGrid g(xs, ys);
        const auto v = n_convexity_verdict(g, 3);

        double brute = 1e300;
        std::vector<int> pick(4);
        const int sz = static_cast<int>(xs.size());
        for (pick[0] = 0; pick[0] < sz; ++pick[0])
            for (pick[1] = pick[0] + 1; pick[1] < sz; ++pick[1])
                for (pick[2] = pick[1] + 1; pick[2] < sz; ++pick[2])
                    for (pick[3] = pick[2] + 1; pick[3] < sz; ++pick[3]) {
                        std::vector<double> sx, sy;
                        for (int p : pick) {
                            sx.push_back(xs[static_cast<std::size_t>(p)]);
                            sy.push_back(ys[static_cast<std::size_t>(p)]);
                        }
                        brute = std::min(brute, divided_difference(sx, sy));
                    }
        EXPECT_EQ(v.holds, brute >= -v.tol) << "rep " << rep << " brute " << brute;
    }
}

TEST(IteratedDifference, CubicTripleStepMatchesHandExpansion) {
    const Interval dom(0.0, 10.0);
    const auto cube = [](double x) { return x * x * x; };
    EXPECT_NEAR(iterated_difference(cube, dom, 0.0, {1.0, 1.0, 1.0}), 6.0, 1e-12);
}

TEST(IteratedDifference, SingleStepIsForwardDifference) {
    const Interval dom(0.0, 10.0);
    const auto f = [](double x) { return std::log1p(x); };
    EXPECT_DOUBLE_EQ(iterated_difference(f, dom, 1.0, {0.7}), f(1.7) - f(1.0));
}

TEST(IteratedDifference, QuadraticAnnihilation) {
    const Interval dom(-10.0, 10.0);
    const auto q = [](double x) { return 1.0 - 2.0 * x + 0.5 * x * x; };
    Rng rng(29);
    for (int rep = 0; rep < 30; ++rep) {
        const double t = rng.uniform(-5.0, 0.0);
        const std::vector<double> steps{rng.uniform(0.0, 1.5), rng.uniform(0.0, 1.5),
                                        rng.uniform(0.0, 1.5)};
        EXPECT_NEAR(iterated_difference(q, dom, t, steps), 0.0, 1e-10);
    }
}

TEST(IteratedDifference, MatchesNestedForwardDifferences) {
    // The subset expansion must equal literally nesting one-step differences.
    const Interval dom(0.0, 40.0);
    const auto f = [](double x) { return std::log1p(x) + 0.1 * x * x; };
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        const double t = rng.uniform(0.0, 2.0);
        const double h1 = rng.uniform(0.1, 2.0);
        const double h2 = rng.uniform(0.1, 2.0);
        const double h3 = rng.uniform(0.1, 2.0);
        const auto d1 = [&](double s) { return f(s + h1) - f(s); };
        const auto d2 = [&](double s) { return d1(s + h2) - d1(s); };
        const double nested = d2(t + h3) - d2(t);
        const double expanded = iterated_difference(f, dom, t, {h1, h2, h3});
        EXPECT_NEAR(expanded, nested, 1e-12 * (1.0 + std::abs(nested)));
    }
}

TEST(IteratedDifference, EquidistantStepsReduceToBinomialForm) {
    const Interval dom(0.0, 40.0);
    const auto f = [](double x) { return std::exp(0.3 * x) - x * x; };
    Rng rng(37);
    for (int rep = 0; rep < 20; ++rep) {
        const double t = rng.uniform(0.0, 4.0);
        const double h = rng.uniform(0.05, 1.5);
        const double binom = f(t + 3.0 * h) - 3.0 * f(t + 2.0 * h) + 3.0 * f(t + h) - f(t);
        const double expanded = iterated_difference(f, dom, t, {h, h, h});
        EXPECT_NEAR(expanded, binom, 1e-12 * (1.0 + std::abs(binom)));
    }
}

TEST(IteratedDifference, RejectsStepsLeavingDomain) {
    const Interval dom(0.0, 2.0);
    EXPECT_THROW(iterated_difference([](double x) { return x; }, dom, 1.0, {0.5, 0.6}),
                 std::domain_error);
}

TEST(PositiveDifferences3, CubicHoldsOnSimplex) {
    const auto rep = positive_differences3_check([](double x) { return x * x * x; },
                                                 Interval(0.0, 10.0), 10.0);
    EXPECT_TRUE(rep.verdict);
    // Small steps leave the mixed difference at rounding scale, so allow the
    // cancellation noise of values up to 10^3.
    EXPECT_GE(rep.margin, -1e-10);
}

TEST(PositiveDifferences3, NegatedCubicFails) {
    const auto rep = positive_differences3_check([](double x) { return -x * x * x; },
                                                 Interval(0.0, 10.0), 10.0);
    EXPECT_FALSE(rep.verdict);
    EXPECT_LT(rep.margin, 0.0);
}

TEST(PositiveDifferences3, QuadraticSitsAtZeroMargin) {
    const auto rep = positive_differences3_check([](double x) { return 3.0 + x - 2.0 * x * x; },
                                                 Interval(0.0, 4.0), 4.0);
    EXPECT_TRUE(rep.verdict);
    EXPECT_NEAR(rep.margin, 0.0, 1e-9 * 40.0);
}

TEST(PositiveDifferences3, RandomPointsKeepDeterminism) {
    SamplingPolicy policy;
    policy.random_points = 200;
    policy.seed = 99;
    const auto f = [](double x) { return x * x * x; };
    const auto r1 = positive_differences3_check(f, Interval(0.0, 6.0), 6.0, policy);
    const auto r2 = positive_differences3_check(f, Interval(0.0, 6.0), 6.0, policy);
    EXPECT_EQ(r1.verdict, r2.verdict);
    EXPECT_DOUBLE_EQ(r1.margin, r2.margin);
}

TEST(BennettResidual, QuadraticBothSidesVanish) {
    const SampleGrid quad({0.0, 1.0, 2.5, 4.0},
                          {1.0, 1.0 - 2.0 + 0.5, 1.0 - 5.0 + 0.5 * 6.25, 1.0 - 8.0 + 8.0});
    const auto fprime = [](double x) { return -2.0 + x; };
    EXPECT_NEAR(bennett_identity_residual(fprime, quad), 0.0, 1e-9);
}

TEST(BennettResidual, MonicCubicSidesEqualOne) {
    const SampleGrid quad({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 8.0, 27.0});
    EXPECT_NEAR(divided_difference(quad), 1.0, 1e-12);
    const auto fprime = [](double x) { return 3.0 * x * x; };
    EXPECT_LE(bennett_identity_residual(fprime, quad), 1e-7);
}

TEST(BennettResidual, LogOneP) {
    const auto f = [](double x) { return std::log1p(x); };
    const SampleGrid quad({0.0, 1.0, 2.0, 3.0}, {f(0.0), f(1.0), f(2.0), f(3.0)});
    const auto fprime = [](double x) { return 1.0 / (1.0 + x); };
    EXPECT_LE(bennett_identity_residual(fprime, quad), 1e-7);
}

TEST(BennettResidual, RequiresExactlyFourNodes) {
    const SampleGrid bad({0.0, 1.0, 2.0}, {0.0, 1.0, 8.0});
    EXPECT_THROW(bennett_identity_residual([](double) { return 0.0; }, bad),
                 std::invalid_argument);
}

} // namespace
} // namespace hiconvex
