// Parallel kernels against their serial references.
//
//   ./build/bench/clickbic_bench --benchmark_filter=Acv
//
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "clickbic/evolve.hpp"
#include "clickbic/kernels.hpp"
#include "clickbic/random.hpp"

namespace {

using namespace clickbic;

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(uniform_below(rng, 20));
  return v;
}

// Arguments: vector count, vector length.
template <auto Fn>
void BM_MeanAbsCorrelation(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  const auto len = static_cast<std::size_t>(state.range(1));
  const auto data = random_values(count * len, 1);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(data, count, len));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count * count));
}

// Arguments: point count, dimension, k.
template <auto Fn>
void BM_AssignNearest(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const auto k = static_cast<std::size_t>(state.range(2));
  const auto points = random_values(count * dim, 2);
  const auto centroids = random_values(k * dim, 3);
  std::vector<std::uint32_t> labels(count);
  std::vector<double> dist(count);
  for (auto _ : state) {
    Fn(points, count, dim, centroids, k, labels, dist);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}

// Arguments: matrix rows (17 columns, as in the clickstream data), population size.
template <auto Fn>
void BM_EvaluatePopulation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t m = 17;
  const auto pop_size = static_cast<std::size_t>(state.range(1));
  AccessMatrix a(n, m);
  const auto values = random_values(n * m, 4);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = values[i * m + j];
  Rng rng(5);
  std::vector<evolve::Chromosome> pop;
  for (std::size_t p = 0; p < pop_size; ++p) {
    Bicluster b;
    for (std::size_t i = 0; i < n; ++i)
      if (uniform01(rng) < 0.3) b.rows.push_back(i);
    for (std::size_t j = 0; j < m; ++j)
      if (uniform01(rng) < 0.5) b.cols.push_back(j);
    pop.push_back(evolve::encode(b, n, m));
  }
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a, pop, 0.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pop_size));
}

using Span = std::span<const double>;
using Labels = std::span<std::uint32_t>;
using Dists = std::span<double>;
using Pop = std::span<const evolve::Chromosome>;

constexpr auto acv_par = static_cast<double (*)(Span, std::size_t, std::size_t)>(
    &kernels::mean_abs_correlation);
constexpr auto acv_ref = static_cast<double (*)(Span, std::size_t, std::size_t)>(
    &kernels::reference::mean_abs_correlation);
using AssignFn = void (*)(Span, std::size_t, std::size_t, Span, std::size_t, Labels, Dists);
constexpr auto assign_par = static_cast<AssignFn>(&kernels::assign_nearest);
constexpr auto assign_ref = static_cast<AssignFn>(&kernels::reference::assign_nearest);
using EvalFn = std::vector<metrics::Score> (*)(const AccessMatrix&, Pop, double);
constexpr auto eval_par = static_cast<EvalFn>(&evolve::evaluate_population);
constexpr auto eval_ref = static_cast<EvalFn>(&evolve::reference::evaluate_population);

void acv_args(benchmark::internal::Benchmark* b) {
  b->Args({17, 400})->Args({400, 17})->Args({2000, 17});
}
void assign_args(benchmark::internal::Benchmark* b) {
  b->Args({10000, 17, 8})->Args({100000, 17, 8})->Args({20000, 400, 8});
}
void eval_args(benchmark::internal::Benchmark* b) { b->Args({1000, 100})->Args({5000, 100}); }

}  // namespace

BENCHMARK(BM_MeanAbsCorrelation<acv_par>)->Name("Acv/parallel")->Apply(acv_args);
BENCHMARK(BM_MeanAbsCorrelation<acv_ref>)->Name("Acv/reference")->Apply(acv_args);
BENCHMARK(BM_AssignNearest<assign_par>)->Name("AssignNearest/parallel")->Apply(assign_args);
BENCHMARK(BM_AssignNearest<assign_ref>)->Name("AssignNearest/reference")->Apply(assign_args);
BENCHMARK(BM_EvaluatePopulation<eval_par>)->Name("EvaluatePopulation/parallel")->Apply(eval_args);
BENCHMARK(BM_EvaluatePopulation<eval_ref>)->Name("EvaluatePopulation/reference")->Apply(eval_args);

BENCHMARK_MAIN();
