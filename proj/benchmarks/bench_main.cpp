#include <benchmark/benchmark.h>

#include <random>

#include "sqfree/arith.hpp"
#include "sqfree/counting.hpp"
#include "sqfree/detmethod.hpp"
#include "sqfree/lattice.hpp"

using namespace sqfree;

static void BM_CountSieve(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  benchmark::DoNotOptimize(c0_reference().value);
  for (auto _ : state) benchmark::DoNotOptimize(count_sieve(x).count);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CountSieve)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

static void BM_CountSieveThreads(benchmark::State& state) {
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_sieve(10'000'000, threads).count);
}
BENCHMARK(BM_CountSieveThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_RootsModSquare(benchmark::State& state) {
  u64 d = 1;
  for (auto _ : state) {
    d = d % 100'000 + 1;
    benchmark::DoNotOptimize(roots_mod_square(d));
  }
}
BENCHMARK(BM_RootsModSquare);

static void BM_GaussReduce(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const std::int64_t M = 1'000'003;
  for (auto _ : state) {
    const auto x3 = static_cast<std::int64_t>(rng() % M);
    benchmark::DoNotOptimize(gauss_reduce({M, 0}, {-x3, 1}));
  }
}
BENCHMARK(BM_GaussReduce);

// Points (s, s^2) on a conic: rank H - 1 when J = H - 1 for K = L = k.
static void BM_KernelPolynomial(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  const unsigned H = (k + 1) * (k + 1);
  RationalMatrix m;
  for (unsigned j = 0; j + 1 < H; ++j) {
    mpq_class s(j + 1, j + 2 + 3 * j);
    s.canonicalize();
    const mpq_class t = s * s;
    std::vector<mpq_class> row;
    mpq_class sk = 1;
    for (unsigned a = 0; a <= k; ++a) {
      mpq_class tl = 1;
      for (unsigned b = 0; b <= k; ++b) {
        row.push_back(sk * tl);
        tl *= t;
      }
      sk *= s;
    }
    m.push_back(std::move(row));
  }
  for (auto _ : state) benchmark::DoNotOptimize(kernel_polynomial(m, k, k));
}
BENCHMARK(BM_KernelPolynomial)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
