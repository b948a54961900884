#include <benchmark/benchmark.h>

#include "bethelab/bae.hpp"
#include "bethelab/qism.hpp"
#include "bethelab/sixvertex.hpp"
#include "bethelab/spinchain.hpp"

using namespace bethe;

static void BM_TransferMatrix(benchmark::State& st) {
  const int L = static_cast<int>(st.range(0));
  const auto f = WeightFamily::trigonometric(kPi / 3.0);
  for (auto _ : st) benchmark::DoNotOptimize(transfer(f, cplx(0.2, 0.1), L));
}
BENCHMARK(BM_TransferMatrix)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_RowSum(benchmark::State& st) {
  const int L = static_cast<int>(st.range(0));
  const VertexWeights w{1.1, 0.7, 0.9};
  for (auto _ : st) benchmark::DoNotOptimize(transfer_matrix_rowsum(w, L));
}
BENCHMARK(BM_RowSum)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_ExactDiagonalize(benchmark::State& st) {
  const ChainParams p{static_cast<int>(st.range(0)), 1.0, 0.5, 0.0};
  for (auto _ : st) benchmark::DoNotOptimize(exact_diagonalize(p).energies);
}
BENCHMARK(BM_ExactDiagonalize)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_SectorBlock(benchmark::State& st) {
  const ChainParams p{static_cast<int>(st.range(0)), 1.0, 0.5, 0.0};
  const auto b = sector_basis(p.L, p.L / 2);
  for (auto _ : st) benchmark::DoNotOptimize(xxz_sector(p, b));
}
BENCHMARK(BM_SectorBlock)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

static void BM_SolveReal(benchmark::State& st) {
  const int M = static_cast<int>(st.range(0));
  const int L = 4 * M;
  std::vector<int> I;
  for (int m = 0; m < M; ++m) I.push_back(m + 1 + M);
  for (auto _ : st) benchmark::DoNotOptimize(solve_real(L, M, I, kPi / 3.0));
}
BENCHMARK(BM_SolveReal)->RangeMultiplier(2)->Range(1, 16)->Unit(benchmark::kMicrosecond);

static void BM_EnumerateReal(benchmark::State& st) {
  const auto f = RapidityFamily::xxz(kPi / 3.0);
  for (auto _ : st)
    for (int M = 0; M <= 6; ++M) benchmark::DoNotOptimize(enumerate_real(6, M, f));
}
BENCHMARK(BM_EnumerateReal)->Unit(benchmark::kMillisecond);

static void BM_BruteForce(benchmark::State& st) {
  const VertexWeights w{cplx(1.1, 0.2), cplx(0.7, -0.3), 0.9};
  const int L = static_cast<int>(st.range(0)), K = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(partition_bruteforce(w, L, K));
}
BENCHMARK(BM_BruteForce)->Args({2, 2})->Args({3, 3})->Args({2, 5})->Unit(benchmark::kMillisecond);

static void BM_PartitionTrace(benchmark::State& st) {
  const VertexWeights w{cplx(1.1, 0.2), cplx(0.7, -0.3), 0.9};
  for (auto _ : st) benchmark::DoNotOptimize(partition_trace(w, static_cast<int>(st.range(0)), 8));
}
BENCHMARK(BM_PartitionTrace)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
