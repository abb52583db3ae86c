#include <benchmark/benchmark.h>

#include <random>

#include "galmod/cohomology.hpp"
#include "galmod/delpezzo.hpp"
#include "galmod/resolution.hpp"

using namespace galmod;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> dist(-9, 9);
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = dist(rng);
  return m;
}

void BM_SmithNormalForm6x6(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::vector<IntegerMatrix> inputs;
  for (int i = 0; i < 32; ++i) inputs.push_back(random_matrix(rng, 6));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smith_normal_form(inputs[k++ % inputs.size()]));
  }
}
BENCHMARK(BM_SmithNormalForm6x6);

void BM_EnumerateWeylDp5(benchmark::State& state) {
  for (auto _ : state) {
    GroupPtr w = weyl_group(picard_preset(5));
    benchmark::DoNotOptimize(w->order());
  }
}
BENCHMARK(BM_EnumerateWeylDp5);

void BM_SubgroupClassesDp5(benchmark::State& state) {
  for (auto _ : state) {
    GroupPtr w = weyl_group(picard_preset(5));
    benchmark::DoNotOptimize(w->subgroup_classes().size());
  }
}
BENCHMARK(BM_SubgroupClassesDp5);

void BM_H1FullWeylDp5(benchmark::State& state) {
  GroupPtr w = weyl_group(picard_preset(5));
  GLattice m = GLattice::defining(w);
  Subgroup full = Subgroup::full(w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(h1(m, full).trivial());
  }
}
BENCHMARK(BM_H1FullWeylDp5);

void BM_Dp5Resolution(benchmark::State& state) {
  GroupPtr w = weyl_group(picard_preset(5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dp5_resolution(Subgroup::full(w)).p->rank());
  }
}
BENCHMARK(BM_Dp5Resolution);

void BM_InvertibleDp6(benchmark::State& state) {
  GroupPtr w = weyl_group(picard_preset(6));
  GLattice m = GLattice::defining(w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_invertible(m).invertible);
  }
}
BENCHMARK(BM_InvertibleDp6);

void BM_InvertibleDp5FullGroup(benchmark::State& state) {
  GroupPtr w = weyl_group(picard_preset(5));
  GLattice m = GLattice::defining(w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_invertible(m).invertible);
  }
}
BENCHMARK(BM_InvertibleDp5FullGroup)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
