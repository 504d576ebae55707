#include <benchmark/benchmark.h>

#include "reviewguard/rng.hpp"
#include "reviewguard/rsd.hpp"

namespace {

using namespace reviewguard;

DailyCountSeries make_series(int active_days) {
  Rng rng(9);
  DailyCountSeries s;
  s.business_id = "b";
  s.window = {make_date(2004, 1, 1), make_date(2016, 12, 31)};
  for (int i = 0; i < active_days; ++i) {
    Date d = s.window.start + Date::duration(rng.uniform_int(0, 4500));
    s.positive[d] += int(rng.uniform_int(1, 8));
    if (rng.bernoulli(0.3)) s.negative[d] += int(rng.uniform_int(1, 4));
  }
  return s;
}

void BM_Quartiles(benchmark::State& state) {
  Rng rng(3);
  std::vector<double> values(std::size_t(state.range(0)));
  for (double& v : values) v = double(rng.uniform_int(0, 50));
  for (auto _ : state) {
    auto q = quartiles(values);
    benchmark::DoNotOptimize(q.q2);
  }
}
BENCHMARK(BM_Quartiles)->Arg(125)->Arg(4096);

void BM_FencesAndSpikes(benchmark::State& state) {
  DailyCountSeries s = make_series(int(state.range(0)));
  for (auto _ : state) {
    auto pos = fences(s, Polarity::Positive);
    auto neg = fences(s, Polarity::Negative);
    auto spikes = detect_spikes(s, pos, neg);
    benchmark::DoNotOptimize(spikes.size());
  }
}
BENCHMARK(BM_FencesAndSpikes)->Arg(125)->Arg(2000);

}  // namespace
