#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "reviewguard/corpus.hpp"
#include "reviewguard/dates.hpp"

namespace reviewguard {

// A burst of same-star reviews on an attacked business. The per-day volume
// must clear the organic fences by construction (validated against the
// organic daily maximum, then re-checked on the generated series).
struct CampaignSpec {
  int reviews_per_day = 20;
  int duration_days = 3;
  int star_value = 5;
};

struct ScenarioSpec {
  std::uint64_t seed = 42;
  int n_ordinary_users = 990;
  int n_popular_users = 10;
  int n_spammer_popular_users = 5;  // subset of the popular users
  int n_businesses = 100;
  int n_attacked_businesses = 40;
  // Organic arrivals: each business is active on a day with this probability
  // and then receives a uniform count in [daily_min, daily_max].
  double organic_active_day_prob = 0.4;
  int organic_daily_min = 1;
  int organic_daily_max = 3;
  int reviews_per_popular_user = 8;  // honest popular activity, folded into organic slots
  CampaignSpec campaign;
  DateWindow window{make_date(2015, 1, 1), make_date(2016, 12, 31)};
};

struct GroundTruth {
  std::vector<std::string> popular_user_ids;
  std::vector<std::string> spammer_user_ids;
  std::vector<std::string> attacked_business_ids;
  std::vector<std::string> planted_spam_review_ids;
};

struct SyntheticCorpus {
  std::vector<UserRecord> users;
  std::vector<ReviewRecord> reviews;
  std::vector<BusinessRecord> businesses;
  GroundTruth truth;
};

// Generates records in memory. Deterministic in spec.seed: every entity draws
// from its own derived stream, so the output is independent of generation
// order. Before returning, the scenario is checked against its own planted
// margins: the spike-detection pass over the generated reviews must flag
// exactly the attacked businesses, and popular/ordinary user features must be
// separated by >= 5 pooled standard deviations per dimension.
SyntheticCorpus generate_records(const ScenarioSpec& spec);

struct GeneratedFiles {
  std::filesystem::path user_path;
  std::filesystem::path review_path;
  std::filesystem::path business_path;
  std::filesystem::path ground_truth_path;
  GroundTruth truth;
};

// Emits the three newline-delimited record files plus ground_truth.json.
// Byte-identical for identical specs.
GeneratedFiles generate(const ScenarioSpec& spec, const std::filesystem::path& out_dir);

void write_ground_truth(const GroundTruth& truth, const std::filesystem::path& path);
GroundTruth load_ground_truth(const std::filesystem::path& path);

}  // namespace reviewguard
