#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reviewguard/clustering.hpp"
#include "reviewguard/config.hpp"
#include "reviewguard/ingest.hpp"
#include "reviewguard/quarantine.hpp"
#include "reviewguard/rsd.hpp"

namespace reviewguard {

// Analysis stages, each reading its inputs from the output directory (the
// snapshot plus the previous stage's CSVs) and writing its own artifacts.
// A one-shot run chains them, so a stage-by-stage session produces the same
// bytes as `run`.

struct IngestSummary {
  IngestStats stats;
};

struct ClusterSummary {
  int best_k = 0;
  std::vector<BicScore> bic_table;
  PopularCluster popular;
};

struct ExtractSummary {
  std::vector<std::string> business_ids;  // sorted
};

struct RsdSummary {
  std::vector<std::string> spiky_ids;  // sorted
  std::int64_t considered = 0;
  std::int64_t spiky = 0;
  std::int64_t skipped_not_enough_data = 0;
  double spiky_fraction = 0.0;
};

struct ScoreSummary {
  std::int64_t reviews_scored = 0;
  std::int64_t reviews_flagged = 0;
  std::int64_t businesses_scored = 0;
  std::int64_t businesses_flagged = 0;
};

struct QuarantineSummary {
  std::vector<QuarantineReport> reports;
};

IngestSummary stage_ingest(const PipelineConfig& config);
ClusterSummary stage_cluster(const PipelineConfig& config);
ExtractSummary stage_extract(const PipelineConfig& config);
RsdSummary stage_rsd(const PipelineConfig& config);
ScoreSummary stage_score(const PipelineConfig& config);
QuarantineSummary stage_quarantine(const PipelineConfig& config);

// Re-renders the SVG plots from the rsd-stage CSVs, without recomputation.
void stage_report(const PipelineConfig& config);

struct PipelineResult {
  IngestSummary ingest;
  ClusterSummary cluster;
  ExtractSummary extract;
  RsdSummary rsd;
  ScoreSummary score;
  QuarantineSummary quarantine;
};

// Runs every stage, then writes manifest.json (config echo, seed, counts and
// SHA-256 of every artifact) and timings.csv. A failing stage leaves a FAILED
// marker naming the stage next to any artifacts already written, and the
// error propagates.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace reviewguard
