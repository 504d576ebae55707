#include <benchmark/benchmark.h>

#include "reviewguard/features.hpp"
#include "reviewguard/rng.hpp"
#include "reviewguard/spamscore.hpp"
#include "reviewguard/synthgen.hpp"

namespace {

using namespace reviewguard;

const Corpus& bench_corpus() {
  static Corpus corpus = [] {
    ScenarioSpec spec;
    spec.seed = 77;
    spec.n_ordinary_users = 300;
    spec.n_popular_users = 6;
    spec.n_spammer_popular_users = 3;
    spec.n_businesses = 30;
    spec.n_attacked_businesses = 10;
    spec.reviews_per_popular_user = 5;
    SyntheticCorpus synth = generate_records(spec);
    return Corpus::build(std::move(synth.users), std::move(synth.reviews),
                         std::move(synth.businesses));
  }();
  return corpus;
}

void BM_CdfFit(benchmark::State& state) {
  Rng rng(2);
  std::vector<double> values(std::size_t(state.range(0)));
  for (double& v : values) v = rng.uniform_real(0, 1);
  for (auto _ : state) {
    EmpiricalCdf cdf = fit_cdf(values);
    benchmark::DoNotOptimize(cdf.at(0.5));
  }
}
BENCHMARK(BM_CdfFit)->Arg(600)->Arg(10000);

void BM_ScoreReviewsOneBusiness(benchmark::State& state) {
  const Corpus& corpus = bench_corpus();
  const std::string biz = corpus.businesses().front().business_id;
  OrientationTable dirs = default_review_orientations();
  for (auto _ : state) {
    auto scores = score_reviews(biz, corpus, dirs, 0.5);
    benchmark::DoNotOptimize(scores.size());
  }
}
BENCHMARK(BM_ScoreReviewsOneBusiness);

void BM_BusinessFeatures(benchmark::State& state) {
  const Corpus& corpus = bench_corpus();
  const std::string biz = corpus.businesses().front().business_id;
  for (auto _ : state) {
    BusinessFeatureVector f = business_features(biz, corpus);
    benchmark::DoNotOptimize(f.mnr);
  }
}
BENCHMARK(BM_BusinessFeatures);

}  // namespace
