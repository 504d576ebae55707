#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "reviewguard/dates.hpp"
#include "reviewguard/ingest.hpp"

namespace reviewguard {

// Every tunable of the analysis pipeline. Defaults here, overridden by a
// key=value config file, then by the environment (output dir only), then by
// explicit CLI flags.
struct PipelineConfig {
  // Inputs: either the three record files or an existing snapshot.
  std::string user_path;
  std::string review_path;
  std::string business_path;
  std::string snapshot_path;  // defaults to <out_dir>/corpus.snap

  std::string out_dir = "out";

  DateWindow window{make_date(2004, 1, 1), make_date(2016, 12, 31)};

  int k_min = 2;
  int k_max = 6;
  int restarts = 4;
  std::uint64_t seed = 42;

  std::int64_t min_reviews = 10;  // business-extraction guard
  int min_active_days = 5;        // fence prerequisite
  double s_threshold = 0.5;       // spam-score flagging bound
  double tolerance = 0.5;         // deceptive-rating band
  int theta_min = 3;
  int theta_max = 10;
  int etf_window_days = 180;

  std::string orientation_path;  // optional feature=H|L override table

  LinkRepairPolicy policy = LinkRepairPolicy::DropDangling;
  double max_error_rate = 0.01;

  bool export_features = false;
  int max_plots = 50;
  bool strict_quarantine = false;  // count > theta instead of >=
  bool tb_full_count = false;      // trusted-score compatibility denominator

  std::filesystem::path resolved_snapshot_path() const {
    return snapshot_path.empty() ? std::filesystem::path(out_dir) / "corpus.snap"
                                 : std::filesystem::path(snapshot_path);
  }
};

// Applies "key = value" lines ('#' comments, blank lines allowed). Unknown
// keys or unparseable values raise Error(Config).
void apply_config_file(PipelineConfig& config, const std::filesystem::path& path);

// Applies REVIEWGUARD_OUT_DIR if set.
void apply_environment(PipelineConfig& config);

// Range/consistency checks; raises Error(Config).
void validate_config(const PipelineConfig& config);

}  // namespace reviewguard
