#include "hiconvex/bernstein.hpp"
#include "hiconvex/divided_differences.hpp"
#include "hiconvex/function_models.hpp"
#include "hiconvex/matrix_ext.hpp"
#include "hiconvex/ordering.hpp"
#include "hiconvex/quadrature.hpp"
#include "hiconvex/rng.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

namespace {

using namespace hiconvex;

SampleGrid cubic_grid(int n) {
    std::vector<double> xs, ys;
    for (int i = 0; i < n; ++i) {
        const double x = 4.0 * i / (n - 1);
        xs.push_back(x);
        ys.push_back(x * x * x - 2.0 * x);
    }
    return SampleGrid(std::move(xs), std::move(ys));
}

void BM_DividedDiffTable(benchmark::State& state) {
    const auto grid = cubic_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_table(grid, 3));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DividedDiffTable)->Arg(64)->Arg(256)->Arg(1024)->Complexity();

void BM_BernsteinEvalSweep(benchmark::State& state) {
    const auto f = FunctionModel::catalog("log1p");
    const BernsteinApproximant b(f, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        double acc = 0.0;
        for (int i = 0; i <= 128; ++i) acc += b(10.0 * i / 128.0);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_BernsteinEvalSweep)->Arg(8)->Arg(32)->Arg(64);

void BM_EigenFactorization(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(5);
    std::vector<double> entries(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = rng.uniform(-1.0, 1.0);
            entries[static_cast<std::size_t>(i) * n + j] = v;
            entries[static_cast<std::size_t>(j) * n + i] = v;
        }
    for (auto _ : state) {
        benchmark::DoNotOptimize(SymmetricMatrix(n, entries));
    }
}
BENCHMARK(BM_EigenFactorization)->Arg(8)->Arg(16)->Arg(32);

void BM_OrderingVerdict(benchmark::State& state) {
    const auto [cond, disp] = condensation_dispersion(0.0, 1.0);
    const Interval window(0.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(precedes_3cvx(cond, disp, window));
    }
}
BENCHMARK(BM_OrderingVerdict);

void BM_AdaptiveQuadrature(benchmark::State& state) {
    const auto integrand = [](double x) { return std::sqrt(x); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate(integrand, 0.0, 1.0));
    }
}
BENCHMARK(BM_AdaptiveQuadrature);

} // namespace

BENCHMARK_MAIN();
