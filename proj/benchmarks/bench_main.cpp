#include <benchmark/benchmark.h>

#include <graphlim/graphlim.hpp>

using namespace graphlim;

namespace {

Graph random_graph(std::uint64_t seed, int n) {
  CounterRng rng(seed);
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rng.bernoulli(0.5)) g.add_edge(a, b);
  return g;
}

void BM_HomCount(benchmark::State& state) {
  const Graph f = Graph::cycle(static_cast<int>(state.range(0)));
  const Graph g = random_graph(1, 16);
  for (auto _ : state) benchmark::DoNotOptimize(hom_count(f, g));
}
BENCHMARK(BM_HomCount)->DenseRange(3, 6);

void BM_CanonicalForm(benchmark::State& state) {
  const Graph g = random_graph(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(g));
}
BENCHMARK(BM_CanonicalForm)->RangeMultiplier(2)->Range(4, 16);

void BM_CutNorm(benchmark::State& state) {
  const StepKernel w = shifted(graphon_of(random_graph(3, static_cast<int>(state.range(0)))), Rational(-1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(cut_norm(w));
}
BENCHMARK(BM_CutNorm)->DenseRange(4, 12, 4);

void BM_Mobius(benchmark::State& state) {
  const GraphParameter f = from_graphon(StepGraphon::constant(Rational(1, 3)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mobius(f));
}
BENCHMARK(BM_Mobius)->DenseRange(4, 6);

void BM_CertifyMantel(benchmark::State& state) {
  QuantumGraph x(0);
  x.add(Graph::complete(3), 1);
  x.add(Graph::complete(2), -1);
  x.add(Graph(), Rational(1, 2));
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_certificate({x, m, {}, 0}));
}
BENCHMARK(BM_CertifyMantel)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
