#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reviewguard/corpus.hpp"
#include "reviewguard/dates.hpp"

namespace reviewguard {

enum class Polarity { Positive, Negative };

const char* to_string(Polarity p);

// Per-business daily review tallies inside the analysis window. Only active
// days (>= 1 review of that polarity) are stored; positive means 4-5 stars,
// negative 1-2, and 3-star reviews contribute to neither.
struct DailyCountSeries {
  std::string business_id;
  DateWindow window{};
  std::map<Date, int> positive;
  std::map<Date, int> negative;

  const std::map<Date, int>& counts(Polarity p) const {
    return p == Polarity::Positive ? positive : negative;
  }
};

struct TukeyQuartiles {
  double q1 = 0, q2 = 0, q3 = 0;
};

// Box-and-whiskers dispersion fences over the daily counts of one polarity.
struct FencePair {
  double q1 = 0, q2 = 0, q3 = 0;
  double iqr = 0;  // q3 - q1
  double uof = 0;  // q3 + 1.5 * iqr
  double lof = 0;  // q1 - 1.5 * iqr
};

struct Spike {
  std::string business_id;
  Date date{};
  Polarity polarity = Polarity::Positive;
  int count = 0;
  double fence = 0;  // the UOF the count exceeded
};

DailyCountSeries build_series(const std::string& business_id, const Corpus& corpus,
                              const DateWindow& window);

// Tukey hinges: q2 is the median; q1/q3 are medians of the lower/upper half,
// where an odd-length list includes the median in both halves. Throws on an
// empty list.
TukeyQuartiles quartiles(std::vector<double> values);

// Fences over the active-day counts of one polarity, or nullopt when the
// series has fewer than min_active_days active days (not enough data).
std::optional<FencePair> fences(const DailyCountSeries& series, Polarity polarity,
                                int min_active_days = 5);

// One spike per (day, polarity) whose count strictly exceeds that polarity's
// UOF; sorted by date, positive before negative on the same day. A missing
// fence contributes no spikes.
std::vector<Spike> detect_spikes(const DailyCountSeries& series,
                                 const std::optional<FencePair>& positive_fences,
                                 const std::optional<FencePair>& negative_fences);

// Full RSD evaluation of one business, kept for reporting and plotting.
struct BusinessRsd {
  DailyCountSeries series;
  std::optional<FencePair> positive_fences;
  std::optional<FencePair> negative_fences;
  std::vector<Spike> spikes;
};

struct SpikyResult {
  std::vector<BusinessRsd> businesses;       // one per input id, same order
  std::vector<std::string> spiky_ids;        // sorted
  std::int64_t considered = 0;
  std::int64_t spiky = 0;
  std::int64_t skipped_not_enough_data = 0;  // neither polarity had fences
  double spiky_fraction = 0.0;
};

SpikyResult spiky_businesses(std::span<const std::string> business_ids, const Corpus& corpus,
                             const DateWindow& window, int min_active_days = 5);

}  // namespace reviewguard
