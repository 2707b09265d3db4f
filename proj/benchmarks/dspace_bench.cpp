#include <benchmark/benchmark.h>

#include "dspace/axioms.hpp"
#include "dspace/chains.hpp"
#include "dspace/dynamics.hpp"
#include "dspace/gallery.hpp"
#include "dspace/harness.hpp"

using namespace dspace;

namespace {

// range(0): Example 3.3 interval count, range(1): workers
void BM_Materialize33(benchmark::State& state) {
  const auto g = example_3_3(static_cast<std::size_t>(state.range(0)));
  const auto w = g.default_window();
  for (auto _ : state) benchmark::DoNotOptimize(DistanceMatrix::materialize(g.space, w, Exec{1}));
  state.counters["points"] = static_cast<double>(w.size());
}
BENCHMARK(BM_Materialize33)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Triangle33(benchmark::State& state) {
  const auto g = example_3_3(static_cast<std::size_t>(state.range(0)));
  const auto m = DistanceMatrix::materialize(g.space, g.default_window());
  const Exec exec{static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(check_triangle(m, exec));
  state.counters["triples"] = static_cast<double>(m.size() * m.size() * m.size());
}
BENCHMARK(BM_Triangle33)->Args({2, 1})->Args({3, 1})->Args({3, 4})->Unit(benchmark::kMillisecond);

void BM_TriangleOrdinals(benchmark::State& state) {
  const auto g = example_3_4(static_cast<std::uint64_t>(state.range(0)), 12);
  const auto m = DistanceMatrix::materialize(g.space, g.default_window());
  for (auto _ : state) benchmark::DoNotOptimize(check_triangle(m, Exec{1}));
  state.counters["points"] = static_cast<double>(m.size());
}
BENCHMARK(BM_TriangleOrdinals)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FloydWarshall(benchmark::State& state) {
  const auto g = gallery_instance(state.range(0) == 0 ? "3.2" : "3.3");
  const auto m = DistanceMatrix::materialize(g.space, g.default_window());
  const Exec exec{static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(associated_functional(m, exec));
  state.counters["points"] = static_cast<double>(m.size());
}
BENCHMARK(BM_FloydWarshall)->Args({0, 1})->Args({1, 1})->Args({1, 4})->Unit(benchmark::kMillisecond);

void BM_Lipschitz(benchmark::State& state) {
  const auto g = gallery_instance(state.range(0) == 0 ? "3.4" : "3.3");
  const auto w = g.default_window();
  for (auto _ : state) benchmark::DoNotOptimize(lipschitz_estimate(g.space, g.map, w, Exec{1}));
  state.counters["points"] = static_cast<double>(w.size());
}
BENCHMARK(BM_Lipschitz)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Harness(benchmark::State& state) {
  const auto g = gallery_instance(state.range(0) == 0 ? "control" : "3.2");
  const auto cfg = g.harness_config();
  for (auto _ : state) benchmark::DoNotOptimize(theorem_harness(g.space, g.map, cfg, Exec{1}));
}
BENCHMARK(BM_Harness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
