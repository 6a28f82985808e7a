#include <benchmark/benchmark.h>

#include "swarmcit/random.h"
#include "swarmcit/tuple_store.h"

namespace {

std::vector<std::vector<int>> random_rows(int k, int v, int n, std::uint64_t seed) {
  swarmcit::Rng rng(seed);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (auto& row : rows) {
    row.resize(static_cast<std::size_t>(k));
    for (auto& x : row) x = rng.below(v);
  }
  return rows;
}

void BM_CoveredCount(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int v = static_cast<int>(state.range(1));
  const std::vector<int> values(static_cast<std::size_t>(k), v);
  swarmcit::TupleStore store(values, 2);
  for (const auto& row : random_rows(k, v, 20, 1)) store.mark_covered(row);
  const auto queries = random_rows(k, v, 256, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(store.covered_count(queries[i++ % queries.size()]));
  }
}
BENCHMARK(BM_CoveredCount)->Args({10, 10})->Args({20, 10})->Args({100, 4});

void BM_CoveredCountAt(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const std::vector<int> values(static_cast<std::size_t>(k), 4);
  swarmcit::TupleStore store(values, 2);
  const auto queries = random_rows(k, 4, 256, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& row = queries[i % queries.size()];
    benchmark::DoNotOptimize(store.covered_count_at(row, static_cast<int>(i % k)));
    ++i;
  }
}
BENCHMARK(BM_CoveredCountAt)->Arg(50)->Arg(200);

void BM_BuildStore(benchmark::State& state) {
  const std::vector<int> values(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    swarmcit::TupleStore store(values, static_cast<int>(state.range(1)));
    benchmark::DoNotOptimize(store.uncovered_total());
  }
}
BENCHMARK(BM_BuildStore)->Args({200, 2})->Args({30, 3})->Unit(benchmark::kMillisecond);

}  // namespace
