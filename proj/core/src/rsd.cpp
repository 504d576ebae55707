#include "reviewguard/rsd.hpp"

#include <algorithm>

#include "reviewguard/error.hpp"

namespace reviewguard {

namespace {

double median_of_sorted(std::span<const double> v) {
  std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

std::vector<double> active_counts(const DailyCountSeries& series, Polarity polarity) {
  std::vector<double> counts;
  counts.reserve(series.counts(polarity).size());
  for (const auto& [day, n] : series.counts(polarity)) counts.push_back(double(n));
  return counts;
}

void append_spikes(const DailyCountSeries& series, Polarity polarity,
                   const std::optional<FencePair>& fence, std::vector<Spike>& out) {
  if (!fence) return;
  for (const auto& [day, n] : series.counts(polarity)) {
    if (double(n) > fence->uof) {
      out.push_back({series.business_id, day, polarity, n, fence->uof});
    }
  }
}

}  // namespace

const char* to_string(Polarity p) {
  return p == Polarity::Positive ? "positive" : "negative";
}

DailyCountSeries build_series(const std::string& business_id, const Corpus& corpus,
                              const DateWindow& window) {
  if (corpus.find_business(business_id) == nullptr) {
    throw_data("unknown business: " + business_id);
  }
  DailyCountSeries series;
  series.business_id = business_id;
  series.window = window;
  for (std::size_t i : corpus.reviews_of_business(business_id)) {
    const ReviewRecord& r = corpus.reviews()[i];
    if (!window.contains(r.date)) continue;
    if (r.stars >= 4) ++series.positive[r.date];
    else if (r.stars <= 2) ++series.negative[r.date];
  }
  return series;
}

TukeyQuartiles quartiles(std::vector<double> values) {
  if (values.empty()) throw_data("quartiles of an empty list");
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  std::span<const double> all(values);

  TukeyQuartiles q;
  q.q2 = median_of_sorted(all);
  // Tukey hinges: an odd-length list contributes its median to both halves.
  std::size_t half = n / 2;
  std::size_t lower_len = (n % 2 == 1) ? half + 1 : half;
  q.q1 = median_of_sorted(all.subspan(0, lower_len));
  q.q3 = median_of_sorted(all.subspan(n - lower_len, lower_len));
  return q;
}

std::optional<FencePair> fences(const DailyCountSeries& series, Polarity polarity,
                                int min_active_days) {
  std::vector<double> counts = active_counts(series, polarity);
  if (std::int64_t(counts.size()) < min_active_days) return std::nullopt;
  TukeyQuartiles q = quartiles(std::move(counts));
  FencePair f;
  f.q1 = q.q1;
  f.q2 = q.q2;
  f.q3 = q.q3;
  f.iqr = q.q3 - q.q1;
  f.uof = q.q3 + 1.5 * f.iqr;
  f.lof = q.q1 - 1.5 * f.iqr;
  return f;
}

std::vector<Spike> detect_spikes(const DailyCountSeries& series,
                                 const std::optional<FencePair>& positive_fences,
                                 const std::optional<FencePair>& negative_fences) {
  std::vector<Spike> spikes;
  append_spikes(series, Polarity::Positive, positive_fences, spikes);
  append_spikes(series, Polarity::Negative, negative_fences, spikes);
  std::sort(spikes.begin(), spikes.end(), [](const Spike& a, const Spike& b) {
    if (a.date != b.date) return a.date < b.date;
    return int(a.polarity) < int(b.polarity);
  });
  return spikes;
}

SpikyResult spiky_businesses(std::span<const std::string> business_ids, const Corpus& corpus,
                             const DateWindow& window, int min_active_days) {
  SpikyResult result;
  result.considered = std::int64_t(business_ids.size());
  result.businesses.reserve(business_ids.size());
  for (const std::string& id : business_ids) {
    BusinessRsd b;
    b.series = build_series(id, corpus, window);
    b.positive_fences = fences(b.series, Polarity::Positive, min_active_days);
    b.negative_fences = fences(b.series, Polarity::Negative, min_active_days);
    if (!b.positive_fences && !b.negative_fences) {
      ++result.skipped_not_enough_data;
    } else {
      b.spikes = detect_spikes(b.series, b.positive_fences, b.negative_fences);
      if (!b.spikes.empty()) result.spiky_ids.push_back(id);
    }
    result.businesses.push_back(std::move(b));
  }
  std::sort(result.spiky_ids.begin(), result.spiky_ids.end());
  result.spiky = std::int64_t(result.spiky_ids.size());
  result.spiky_fraction =
      result.considered > 0 ? double(result.spiky) / double(result.considered) : 0.0;
  return result;
}

}  // namespace reviewguard
