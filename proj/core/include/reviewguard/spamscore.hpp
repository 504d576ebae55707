#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "reviewguard/corpus.hpp"

namespace reviewguard {

// Which tail of a feature's distribution is the suspicious one: High means an
// unusually large value is suspicious, Low an unusually small one. Either way
// the f-value of a suspicious observation comes out near 0.
enum class Direction { High, Low };

using OrientationTable = std::map<std::string, Direction>;

OrientationTable default_review_orientations();
OrientationTable default_business_orientations();

// Reads "feature=H|L" lines (blank lines and '#' comments allowed). Unknown
// feature names or malformed lines raise Error(Config). Missing features keep
// their default direction.
OrientationTable load_orientations(const std::filesystem::path& path,
                                   const OrientationTable& defaults);

// Empirical distribution of one feature over its scoring population.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> values);  // throws on empty/non-finite

  // P(X <= x) = |{v : v <= x}| / N.
  double at(double x) const;

  bool degenerate() const { return sorted_.front() == sorted_.back(); }
  std::size_t size() const { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

inline EmpiricalCdf fit_cdf(std::vector<double> values) { return EmpiricalCdf(std::move(values)); }

// Tail suspiciousness of x under the feature's orientation:
// High -> 1 - P(X <= x), Low -> P(X <= x). Low values = suspicious.
double f_value(const EmpiricalCdf& cdf, double x, Direction direction);

// S = 1 - sqrt(mean of f^2) on [0,1]; higher = more suspicious. Throws on an
// empty f set.
double combine(std::span<const double> f_values);

struct SpamScore {
  std::string subject_id;
  // f per feature, in the fixed feature order, for the features that carried
  // evidence (non-degenerate populations).
  std::vector<std::pair<std::string, double>> f_values;
  std::vector<std::string> excluded_features;  // degenerate in the population
  double score = 0.0;
  bool flagged = false;
  // True when every feature was degenerate; score is reported as 0 and the
  // subject is never flagged.
  bool degenerate_population = false;
};

// Scores every review of one business. Feature CDFs are fitted over that
// business's own reviews.
std::map<std::string, SpamScore> score_reviews(const std::string& business_id,
                                               const Corpus& corpus,
                                               const OrientationTable& orientations,
                                               double s_threshold);

// Scores businesses against their peer population: CDFs are fitted across all
// `business_ids` (the extracted set). Requires at least 2 businesses.
std::map<std::string, SpamScore> score_businesses(std::span<const std::string> business_ids,
                                                  const Corpus& corpus,
                                                  const OrientationTable& orientations,
                                                  double s_threshold);

}  // namespace reviewguard
