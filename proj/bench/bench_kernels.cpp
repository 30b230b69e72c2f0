// Serial reference vs OpenMP kernels.

#include "finosc/kernels.hpp"
#include "finosc/matrix_elements.hpp"
#include "finosc/multi_ortho.hpp"
#include "finosc/squeezing.hpp"
#include "finosc/su2.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace finosc;

const Params kParams{0.8, 0.3, 0.2, 0.9};

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

void BM_matmul(benchmark::State& st)
{
    const int n = static_cast<int>(st.range(0));
    const MatC a = build_R<double>(kParams, n - 1);
    const MatC b = build_R_inverse<double>(kParams, n - 1);
    const Exec ex = exec_of(st);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::matmul(a, b, ex));
}

void BM_table(benchmark::State& st)
{
    const int N = static_cast<int>(st.range(0));
    const Exec ex = exec_of(st);
    for (auto _ : st)
        benchmark::DoNotOptimize(R_table(kParams, N, RMethod::closed_form, ex));
}

void BM_sweep(benchmark::State& st)
{
    const int N = static_cast<int>(st.range(0));
    const Exec ex = exec_of(st);
    for (auto _ : st)
        benchmark::DoNotOptimize(sweep(N, 0.8, 2.0, 361, ex));
}

void BM_solve_Q_grid(benchmark::State& st)
{
    const int N = static_cast<int>(st.range(0));
    const MatrixPolyLayer L = MatrixPolyLayer::build(kParams, N);
    const Exec ex = exec_of(st);
    for (auto _ : st)
        benchmark::DoNotOptimize(solve_Q_grid(L.gamma, L.n_max, ex));
}

}  // namespace

BENCHMARK(BM_matmul)->ArgsProduct({{32, 96, 192}, {0, 1}});
BENCHMARK(BM_table)->ArgsProduct({{20, 60}, {0, 1}});
BENCHMARK(BM_sweep)->ArgsProduct({{40}, {0, 1}});
BENCHMARK(BM_solve_Q_grid)->ArgsProduct({{14, 26}, {0, 1}});

BENCHMARK_MAIN();
