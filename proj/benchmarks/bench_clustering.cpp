#include <benchmark/benchmark.h>

#include "reviewguard/clustering.hpp"
#include "reviewguard/rng.hpp"

namespace {

using namespace reviewguard;

std::vector<std::vector<double>> make_vectors(std::size_t n, std::size_t d) {
  Rng rng(1234);
  std::vector<std::vector<double>> out(n, std::vector<double>(d));
  for (auto& v : out) {
    for (double& x : v) x = rng.uniform_real(-3, 3);
  }
  return out;
}

void BM_Kmeans(benchmark::State& state) {
  auto vectors = make_vectors(std::size_t(state.range(0)), 8);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Clustering c = kmeans(vectors, 4, seed++);
    benchmark::DoNotOptimize(c.distortion);
  }
}
BENCHMARK(BM_Kmeans)->Arg(1000)->Arg(10000);

void BM_SweepK(benchmark::State& state) {
  auto vectors = make_vectors(1000, 8);
  for (auto _ : state) {
    SweepResult r = sweep_k(vectors, 2, 6, 2, 42);
    benchmark::DoNotOptimize(r.best_k);
  }
}
BENCHMARK(BM_SweepK);

void BM_Bic(benchmark::State& state) {
  auto vectors = make_vectors(10000, 8);
  Clustering c = kmeans(vectors, 4, 7);
  for (auto _ : state) {
    BicScore s = bic(c, vectors);
    benchmark::DoNotOptimize(s.bic);
  }
}
BENCHMARK(BM_Bic);

}  // namespace
