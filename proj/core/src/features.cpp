#include "reviewguard/features.hpp"

#include <algorithm>
#include <cmath>

#include "reviewguard/error.hpp"
#include "reviewguard/text.hpp"

namespace reviewguard {

namespace {

struct BusinessBaseline {
  double mean_stars = 0;
  Date first_review{};
};

BusinessBaseline baseline_of(std::span<const std::size_t> review_idx, const Corpus& corpus) {
  BusinessBaseline base;
  double sum = 0;
  Date first = Date::max();
  for (std::size_t i : review_idx) {
    const ReviewRecord& r = corpus.reviews()[i];
    sum += r.stars;
    first = std::min(first, r.date);
  }
  base.mean_stars = sum / double(review_idx.size());
  base.first_review = first;
  return base;
}

ReviewFeatureVector extract_review(const ReviewRecord& review, const Corpus& corpus,
                                   const BusinessBaseline& base, int etf_window_days) {
  ReviewFeatureVector f;
  f.rd = std::abs(double(review.stars) - base.mean_stars);
  f.ext = (review.stars >= 4) ? 1.0 : 0.0;
  long delta = days_between(base.first_review, review.date);
  f.etf = std::max(0.0, 1.0 - double(delta) / double(etf_window_days));
  f.isr = (corpus.reviews_of_user(review.user_id).size() == 1) ? 1.0 : 0.0;
  TextStats text = analyze_text(review.text);
  f.pcw = text.word_count > 0 ? double(text.capital_words) / double(text.word_count) : 0.0;
  f.pp1 = text.word_count > 0 ? double(text.first_person_words) / double(text.word_count) : 0.0;
  f.exc = double(text.exclamations);
  return f;
}

}  // namespace

UserFeatureVector user_features(const UserRecord& user) {
  UserFeatureVector f;
  f.yelping_since = user.yelping_since;
  f.average_star = user.average_stars;
  f.elite_count = double(user.elite_years.size());
  f.fans = double(user.fan_count);
  f.friends_count = double(user.friend_count);
  f.review_count = double(user.review_count);
  f.total_votes = double(total_votes(user));
  f.total_compliments = double(total_compliments(user));
  return f;
}

ReviewFeatureVector review_features(const ReviewRecord& review, const Corpus& corpus,
                                    int etf_window_days) {
  auto idx = corpus.reviews_of_business(review.business_id);
  if (idx.empty()) throw_internal("review's business has no reviews in corpus");
  return extract_review(review, corpus, baseline_of(idx, corpus), etf_window_days);
}

std::vector<ReviewFeatureVector> review_features_for_business(const std::string& business_id,
                                                              const Corpus& corpus,
                                                              int etf_window_days) {
  auto idx = corpus.reviews_of_business(business_id);
  if (idx.empty()) throw_data("business has no reviews: " + business_id);
  BusinessBaseline base = baseline_of(idx, corpus);
  std::vector<ReviewFeatureVector> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) {
    out.push_back(extract_review(corpus.reviews()[i], corpus, base, etf_window_days));
  }
  return out;
}

double entropy_bits(std::span<const long> counts) {
  long total = 0;
  for (long c : counts) total += c;
  if (total <= 0) return 0.0;
  double h = 0.0;
  for (long c : counts) {
    if (c <= 0) continue;
    double p = double(c) / double(total);
    h -= p * std::log2(p);
  }
  return h;
}

BusinessFeatureVector business_features(const std::string& business_id, const Corpus& corpus,
                                        std::span<const long> etg_bucket_upper_bounds) {
  auto idx = corpus.reviews_of_business(business_id);
  if (idx.empty()) throw_data("business has no reviews: " + business_id);

  BusinessFeatureVector f;
  BusinessBaseline base = baseline_of(idx, corpus);

  std::map<Date, long> per_day;
  std::array<long, 5> star_hist{};
  std::vector<Date> dates;
  dates.reserve(idx.size());
  double rd_sum = 0, length_sum = 0;
  long positive = 0, negative = 0;
  for (std::size_t i : idx) {
    const ReviewRecord& r = corpus.reviews()[i];
    ++per_day[r.date];
    ++star_hist[std::size_t(r.stars - 1)];
    dates.push_back(r.date);
    rd_sum += std::abs(double(r.stars) - base.mean_stars);
    length_sum += double(analyze_text(r.text).word_count);
    if (r.stars >= 4) ++positive;
    if (r.stars <= 2) ++negative;
  }

  long mnr = 0;
  for (const auto& [day, n] : per_day) mnr = std::max(mnr, n);
  double n = double(idx.size());

  f.mnr = double(mnr);
  f.pr = double(positive) / n;
  f.nr = double(negative) / n;
  f.avg_rd = rd_sum / n;
  f.erd = entropy_bits(star_hist);

  // Consecutive-review gaps over the date-sorted sequence; a single review
  // has no gaps and scores 0.
  std::sort(dates.begin(), dates.end());
  std::vector<long> gap_hist(etg_bucket_upper_bounds.size() + 1, 0);
  for (std::size_t i = 1; i < dates.size(); ++i) {
    long gap = days_between(dates[i - 1], dates[i]);
    std::size_t bucket = 0;
    while (bucket < etg_bucket_upper_bounds.size() && gap > etg_bucket_upper_bounds[bucket]) {
      ++bucket;
    }
    ++gap_hist[bucket];
  }
  f.etg = entropy_bits(gap_hist);
  f.rl = length_sum / n;
  return f;
}

NormalizedVectors zscore_normalize(const std::vector<std::vector<double>>& vectors) {
  if (vectors.size() < 2) throw_data("z-score normalization needs at least 2 vectors");
  std::size_t d = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != d) throw_data("inconsistent vector dimensions");
  }

  NormalizedVectors out;
  out.params.mean.assign(d, 0.0);
  out.params.stddev.assign(d, 0.0);
  double n = double(vectors.size());

  for (const auto& v : vectors) {
    for (std::size_t j = 0; j < d; ++j) out.params.mean[j] += v[j];
  }
  for (std::size_t j = 0; j < d; ++j) out.params.mean[j] /= n;

  for (const auto& v : vectors) {
    for (std::size_t j = 0; j < d; ++j) {
      double diff = v[j] - out.params.mean[j];
      out.params.stddev[j] += diff * diff;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    out.params.stddev[j] = std::sqrt(out.params.stddev[j] / n);  // population variance
  }

  out.vectors.reserve(vectors.size());
  for (const auto& v : vectors) {
    std::vector<double> z(d);
    for (std::size_t j = 0; j < d; ++j) {
      z[j] = out.params.stddev[j] > 0 ? (v[j] - out.params.mean[j]) / out.params.stddev[j] : 0.0;
    }
    out.vectors.push_back(std::move(z));
  }
  return out;
}

std::vector<double> denormalize(std::span<const double> v, const NormalizationParams& params) {
  if (v.size() != params.mean.size()) throw_internal("denormalize: dimension mismatch");
  std::vector<double> raw(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    raw[j] = v[j] * params.stddev[j] + params.mean[j];
  }
  return raw;
}

}  // namespace reviewguard
