#include "reviewguard/spamscore.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "reviewguard/error.hpp"
#include "reviewguard/features.hpp"

namespace reviewguard {

namespace {

// Spammers deviate from the mean, pile on 4-5 stars, post early, shout in
// capitals and exclamation marks, and avoid first-person voice; bursty
// businesses have concentrated timing and short reviews.
const std::pair<const char*, Direction> kReviewDefaults[] = {
    {"RD", Direction::High},  {"EXT", Direction::High}, {"ETF", Direction::High},
    {"ISR", Direction::High}, {"PCW", Direction::High}, {"PP1", Direction::Low},
    {"EXC", Direction::High},
};

const std::pair<const char*, Direction> kBusinessDefaults[] = {
    {"MNR", Direction::High},   {"PR", Direction::High},  {"NR", Direction::High},
    {"avgRD", Direction::High}, {"ERD", Direction::Low},  {"ETG", Direction::Low},
    {"RL", Direction::Low},
};

// Builds one SpamScore from parallel (name, value) feature observations and
// their fitted population CDFs.
SpamScore score_subject(std::string subject_id, std::span<const std::string> names,
                        std::span<const double> values, std::span<const EmpiricalCdf> cdfs,
                        const OrientationTable& orientations, double s_threshold) {
  SpamScore s;
  s.subject_id = std::move(subject_id);
  std::vector<double> fs;
  fs.reserve(names.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (cdfs[j].degenerate()) {
      // A constant feature carries no evidence either way; keep it out of the
      // combination instead of letting the orientation pick 0 or 1.
      s.excluded_features.push_back(names[j]);
      continue;
    }
    auto dir = orientations.find(names[j]);
    if (dir == orientations.end()) throw_config("orientation table missing feature " + names[j]);
    double f = f_value(cdfs[j], values[j], dir->second);
    s.f_values.emplace_back(names[j], f);
    fs.push_back(f);
  }
  if (fs.empty()) {
    s.degenerate_population = true;
    s.score = 0.0;
    s.flagged = false;
  } else {
    s.score = combine(fs);
    s.flagged = s.score > s_threshold;
  }
  return s;
}

OrientationTable table_from(std::span<const std::pair<const char*, Direction>> defaults) {
  OrientationTable t;
  for (const auto& [name, dir] : defaults) t.emplace(name, dir);
  return t;
}

}  // namespace

OrientationTable default_review_orientations() { return table_from(kReviewDefaults); }

OrientationTable default_business_orientations() { return table_from(kBusinessDefaults); }

OrientationTable load_orientations(const std::filesystem::path& path,
                                   const OrientationTable& defaults) {
  std::ifstream in(path);
  if (!in) throw_config("cannot open orientation table: " + path.string());
  OrientationTable table = defaults;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv(line);
    while (!sv.empty() && (sv.back() == '\r' || sv.back() == ' ' || sv.back() == '\t')) {
      sv.remove_suffix(1);
    }
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
    if (sv.empty() || sv.front() == '#') continue;
    auto eq = sv.find('=');
    std::string where = path.filename().string() + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) throw_config(where + ": expected feature=H|L");
    std::string name(sv.substr(0, eq));
    std::string_view dir = sv.substr(eq + 1);
    if (!table.contains(name)) throw_config(where + ": unknown feature '" + name + "'");
    if (dir == "H") table[name] = Direction::High;
    else if (dir == "L") table[name] = Direction::Low;
    else throw_config(where + ": direction must be H or L, got '" + std::string(dir) + "'");
  }
  return table;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw_data("empirical CDF of an empty sample");
  for (double v : sorted_) {
    if (!std::isfinite(v)) throw_data("non-finite value in CDF sample");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::at(double x) const {
  auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return double(it - sorted_.begin()) / double(sorted_.size());
}

double f_value(const EmpiricalCdf& cdf, double x, Direction direction) {
  double p = cdf.at(x);
  return direction == Direction::High ? 1.0 - p : p;
}

double combine(std::span<const double> f_values) {
  if (f_values.empty()) throw_data("combine over an empty f set");
  double sq_sum = 0;
  for (double f : f_values) sq_sum += f * f;
  return 1.0 - std::sqrt(sq_sum / double(f_values.size()));
}

std::map<std::string, SpamScore> score_reviews(const std::string& business_id,
                                               const Corpus& corpus,
                                               const OrientationTable& orientations,
                                               double s_threshold) {
  auto idx = corpus.reviews_of_business(business_id);
  if (idx.empty()) throw_data("business has no reviews: " + business_id);

  std::vector<ReviewFeatureVector> features = review_features_for_business(business_id, corpus);
  std::vector<std::string> names(kReviewFeatureNames.begin(), kReviewFeatureNames.end());

  std::vector<EmpiricalCdf> cdfs;
  cdfs.reserve(names.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    std::vector<double> column;
    column.reserve(features.size());
    for (const auto& f : features) column.push_back(f.as_array()[j]);
    cdfs.emplace_back(std::move(column));
  }

  std::map<std::string, SpamScore> scores;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const ReviewRecord& r = corpus.reviews()[idx[i]];
    auto values = features[i].as_array();
    scores.emplace(r.review_id, score_subject(r.review_id, names, values, cdfs, orientations,
                                              s_threshold));
  }
  return scores;
}

std::map<std::string, SpamScore> score_businesses(std::span<const std::string> business_ids,
                                                  const Corpus& corpus,
                                                  const OrientationTable& orientations,
                                                  double s_threshold) {
  if (business_ids.size() < 2) {
    throw_data("business scoring needs a population of at least 2 businesses");
  }
  std::vector<std::string> names(kBusinessFeatureNames.begin(), kBusinessFeatureNames.end());

  std::vector<BusinessFeatureVector> features;
  features.reserve(business_ids.size());
  for (const std::string& id : business_ids) features.push_back(business_features(id, corpus));

  std::vector<EmpiricalCdf> cdfs;
  cdfs.reserve(names.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    std::vector<double> column;
    column.reserve(features.size());
    for (const auto& f : features) column.push_back(f.as_array()[j]);
    cdfs.emplace_back(std::move(column));
  }

  std::map<std::string, SpamScore> scores;
  for (std::size_t i = 0; i < business_ids.size(); ++i) {
    auto values = features[i].as_array();
    scores.emplace(business_ids[i], score_subject(business_ids[i], names, values, cdfs,
                                                  orientations, s_threshold));
  }
  return scores;
}

}  // namespace reviewguard
