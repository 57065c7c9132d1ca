#include <benchmark/benchmark.h>

#include "torus/clifford.hpp"
#include "torus/exactpoly.hpp"
#include "torus/intmatrix.hpp"
#include "torus/numberfield.hpp"
#include "torus/obstruction.hpp"
#include "torus/recipes.hpp"

using namespace torus;

static void BM_Discriminant(benchmark::State& state) {
  const auto p = builtin_field_poly(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(discriminant(*p));
}
BENCHMARK(BM_Discriminant)->DenseRange(3, 8);

static void BM_IsolateRoots(benchmark::State& state) {
  const auto p = builtin_field_poly(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(isolate_real_roots(*p));
}
BENCHMARK(BM_IsolateRoots)->DenseRange(3, 8);

static void BM_Charpoly(benchmark::State& state) {
  const ConstructionCertificate c = assemble(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(charpoly(c.a1));
}
BENCHMARK(BM_Charpoly)->DenseRange(7, 11);

static void BM_LiftLoop(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const LoopSpec spec = build_loop_spec(SignPattern::from_negative_set(d, {0, 1}),
                                        SignPattern::from_negative_set(d, {1, 2}));
  for (auto _ : state) benchmark::DoNotOptimize(lift_loop(spec, 64));
}
BENCHMARK(BM_LiftLoop)->DenseRange(3, 12, 3);

static void BM_UnitSearch(benchmark::State& state) {
  const TotallyRealField k = TotallyRealField::create(cubic_field_poly());
  for (auto _ : state) benchmark::DoNotOptimize(unit_search(k, state.range(0)));
}
BENCHMARK(BM_UnitSearch)->Arg(2)->Arg(4);

static void BM_Assemble(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(assemble(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Assemble)->Arg(7)->Arg(10);
BENCHMARK_MAIN();
