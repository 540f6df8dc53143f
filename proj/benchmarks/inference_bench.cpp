#include <benchmark/benchmark.h>

#include "acr/catalog.hpp"
#include "acr/graph.hpp"
#include "acr/inference.hpp"
#include "acr/rng.hpp"

namespace {

void BM_InferKind(benchmark::State& state) {
  const auto& catalog = acr::planner::canonical_catalog();
  auto strategy = static_cast<acr::ProbeStrategy>(state.range(0));
  for (auto _ : state) {
    for (const auto& [kind, id] : catalog.object_category) {
      benchmark::DoNotOptimize(acr::planner::infer_kind(catalog, kind, strategy));
    }
  }
  state.SetLabel(acr::to_string(strategy));
}
BENCHMARK(BM_InferKind)->DenseRange(0, 2);

void BM_DeriveCategories(benchmark::State& state) {
  acr::Rng rng(1);
  acr::AcrGraph graph;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < 4 * n; ++i) {
    graph.ingest({{"o" + std::to_string(rng.index(n))}, {"a" + std::to_string(rng.index(n))}});
  }
  for (auto _ : state) benchmark::DoNotOptimize(acr::derive_categories(graph));
}
BENCHMARK(BM_DeriveCategories)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace
