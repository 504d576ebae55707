#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "reviewguard/corpus.hpp"

namespace reviewguard {

// Engagement profile of an account. Order matches kUserFeatureNames and is
// the clustering input order.
struct UserFeatureVector {
  double yelping_since = 0;
  double average_star = 0;
  double elite_count = 0;
  double fans = 0;
  double friends_count = 0;
  double review_count = 0;
  double total_votes = 0;
  double total_compliments = 0;

  std::array<double, 8> as_array() const {
    return {yelping_since, average_star, elite_count, fans,
            friends_count, review_count, total_votes, total_compliments};
  }
};

inline constexpr std::array<const char*, 8> kUserFeatureNames = {
    "yelping_since", "average_star", "elite_count", "fans",
    "friends_count", "review_count", "total_votes", "total_compliments"};

// Per-review textual/behavioral signals.
//   rd  - absolute deviation of the rating from the business mean
//   ext - 1 if the rating is 4 or 5
//   etf - early-timeframe score, 1 at the business's first review day
//         decaying linearly to 0 at `etf_window_days`
//   isr - 1 if this is the author's only review in the corpus
//   pcw - capital words / words
//   pp1 - first-person pronouns / words
//   exc - '!' count
struct ReviewFeatureVector {
  double rd = 0, ext = 0, etf = 0, isr = 0, pcw = 0, pp1 = 0, exc = 0;

  std::array<double, 7> as_array() const { return {rd, ext, etf, isr, pcw, pp1, exc}; }
};

inline constexpr std::array<const char*, 7> kReviewFeatureNames = {
    "RD", "EXT", "ETF", "ISR", "PCW", "PP1", "EXC"};

// Per-business aggregates over its reviews.
//   mnr    - max reviews in one day
//   pr/nr  - fraction of {4,5} / {1,2} star reviews
//   avg_rd - mean rating deviation
//   erd    - entropy (base 2) of the star histogram
//   etg    - entropy (base 2) of bucketed consecutive-review day gaps
//   rl     - mean review length in words
struct BusinessFeatureVector {
  double mnr = 0, pr = 0, nr = 0, avg_rd = 0, erd = 0, etg = 0, rl = 0;

  std::array<double, 7> as_array() const { return {mnr, pr, nr, avg_rd, erd, etg, rl}; }
};

inline constexpr std::array<const char*, 7> kBusinessFeatureNames = {
    "MNR", "PR", "NR", "avgRD", "ERD", "ETG", "RL"};

inline constexpr int kDefaultEtfWindowDays = 180;

// Gap buckets for ETG, expressed as upper bounds in days: 0, 1, 2-3, 4-7,
// 8-30, >30.
inline constexpr std::array<long, 5> kDefaultEtgBucketUpperBounds = {0, 1, 3, 7, 30};

UserFeatureVector user_features(const UserRecord& user);

ReviewFeatureVector review_features(const ReviewRecord& review, const Corpus& corpus,
                                    int etf_window_days = kDefaultEtfWindowDays);

// Extracts all reviews of one business in one pass (same values as the
// per-review call, with the business mean and first-review day computed once).
// Results are keyed by position in corpus.reviews_of_business(business_id).
std::vector<ReviewFeatureVector> review_features_for_business(
    const std::string& business_id, const Corpus& corpus,
    int etf_window_days = kDefaultEtfWindowDays);

BusinessFeatureVector business_features(
    const std::string& business_id, const Corpus& corpus,
    std::span<const long> etg_bucket_upper_bounds = kDefaultEtgBucketUpperBounds);

// Per-dimension mean and population standard deviation, kept so centroids can
// be mapped back to raw units for reporting.
struct NormalizationParams {
  std::vector<double> mean;
  std::vector<double> stddev;  // 0 marks a constant dimension
};

struct NormalizedVectors {
  std::vector<std::vector<double>> vectors;
  NormalizationParams params;
};

// Z-scores each dimension (constant dimensions map to 0). Requires >= 2
// vectors of equal dimension; throws Error(Data) otherwise.
NormalizedVectors zscore_normalize(const std::vector<std::vector<double>>& vectors);

std::vector<double> denormalize(std::span<const double> v, const NormalizationParams& params);

// Shannon entropy (base 2) of a histogram; zero-count bins contribute nothing.
double entropy_bits(std::span<const long> counts);

}  // namespace reviewguard
