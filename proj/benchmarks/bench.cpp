#include <benchmark/benchmark.h>

#include "semitop/cantor.hpp"
#include "semitop/clones.hpp"
#include "semitop/elements.hpp"
#include "semitop/fintop.hpp"
#include "semitop/propx.hpp"
#include "semitop/zariski.hpp"

namespace {

using namespace semitop;

void BM_ZariskiChain4(benchmark::State& state) {
  FiniteSemigroup s = chain_semilattice(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(zariski_topology(s, ZariskiMode::Semigroup, WordMode::WithConstants));
}
BENCHMARK(BM_ZariskiChain4);

void BM_EnumerateTopologies3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_topologies(3));
}
BENCHMARK(BM_EnumerateTopologies3);

void BM_BipartitionProduct(benchmark::State& state) {
  Bipartition a = parse_bipartition("[[0,1,2'],[1',4],[2,3,0'],[3',4']]");
  Bipartition b = parse_bipartition("[[0,0'],[1,2,3],[1',2'],[4,3',4']]");
  for (auto _ : state) benchmark::DoNotOptimize(bipartition_product(a, b));
}
BENCHMARK(BM_BipartitionProduct);

void BM_WitnessIdentityXX(benchmark::State& state) {
  Rng rng(11);
  ComputableElement s = sample_element(Family::Transformation, rng, 8);
  for (auto _ : state) {
    WitnessBundle b = witness(WitnessMonoid::XX, s);
    benchmark::DoNotOptimize(verify_identity(b, s, 64));
  }
}
BENCHMARK(BM_WitnessIdentityXX);

void BM_CantorWitness(benchmark::State& state) {
  PrefixMap s = parse_prefix_map("flip(2)");
  for (auto _ : state) {
    CantorWitness w = cantor_propx_witness(s);
    benchmark::DoNotOptimize(verify_cantor_witness(w, s, 8));
  }
}
BENCHMARK(BM_CantorWitness);

void BM_CloneGenerateNand(benchmark::State& state) {
  FiniteOperation nand{2, 2, {1, 1, 1, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(clone_generate({nand}, 2, 2));
}
BENCHMARK(BM_CloneGenerateNand);

}  // namespace

BENCHMARK_MAIN();
