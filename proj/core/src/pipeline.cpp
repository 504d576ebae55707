#include "reviewguard/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <set>
#include <unordered_map>

#include "reviewguard/csv.hpp"
#include "reviewguard/error.hpp"
#include "reviewguard/features.hpp"
#include "reviewguard/hash.hpp"
#include "reviewguard/snapshot.hpp"
#include "reviewguard/spamscore.hpp"
#include "reviewguard/svg.hpp"

namespace reviewguard {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path out_path(const PipelineConfig& config, const char* name) {
  return fs::path(config.out_dir) / name;
}

void require_artifact(const fs::path& path, const char* producer_stage) {
  if (!fs::exists(path)) {
    throw_data("missing artifact " + path.string() + "; run the '" + producer_stage +
               "' stage first");
  }
}

Corpus load_corpus(const PipelineConfig& config, const char* for_stage) {
  fs::path snap = config.resolved_snapshot_path();
  if (!fs::exists(snap)) {
    throw_data("missing corpus snapshot " + snap.string() + " needed by '" +
               std::string(for_stage) + "'; run the 'ingest' stage first");
  }
  return load_snapshot(snap);
}

std::vector<std::string> read_id_column(const fs::path& path) {
  auto rows = read_csv(path);
  std::vector<std::string> ids;
  for (std::size_t i = 1; i < rows.size(); ++i) {  // skip header
    if (!rows[i].empty() && !rows[i][0].empty()) ids.push_back(rows[i][0]);
  }
  return ids;
}

double reference_year(const Corpus& corpus) {
  int max_year = 0;
  for (const ReviewRecord& r : corpus.reviews()) max_year = std::max(max_year, year_of(r.date));
  return max_year > 0 ? double(max_year) : 2016.0;
}

OrientationTable resolve_orientations(const PipelineConfig& config,
                                      const OrientationTable& defaults) {
  if (config.orientation_path.empty()) return defaults;
  return load_orientations(config.orientation_path, defaults);
}

// ---- artifact writers ------------------------------------------------------

void write_ingest_report(const PipelineConfig& config, const IngestResult& result) {
  CsvWriter csv;
  csv.row({"metric", "value"});
  auto emit = [&](const std::string& name, std::int64_t v) {
    csv.row({name, std::to_string(v)});
  };
  emit("users_lines", result.stats.users.lines);
  emit("users_parsed", result.stats.users.parsed);
  emit("users_invalid", result.stats.users.invalid);
  emit("reviews_lines", result.stats.reviews.lines);
  emit("reviews_parsed", result.stats.reviews.parsed);
  emit("reviews_invalid", result.stats.reviews.invalid);
  emit("businesses_lines", result.stats.businesses.lines);
  emit("businesses_parsed", result.stats.businesses.parsed);
  emit("businesses_invalid", result.stats.businesses.invalid);
  emit("dangling_dropped", result.stats.dangling_dropped);
  emit("stubs_created", result.stats.stubs_created);
  write_file_atomic(out_path(config, "ingest_report.csv"), csv.str());

  if (!result.line_errors.empty()) {
    std::string errors;
    for (const auto& e : result.line_errors) {
      errors += e;
      errors += '\n';
    }
    write_file_atomic(out_path(config, "ingest_errors.txt"), errors);
  }
}

void write_bic_table(const PipelineConfig& config, const std::vector<BicScore>& scores,
                     int best_k) {
  CsvWriter csv;
  csv.row({"k", "log_likelihood", "penalty", "bic", "degenerate", "chosen"});
  for (const BicScore& s : scores) {
    csv.row({std::to_string(s.k), format_double(s.log_likelihood), format_double(s.penalty),
             format_double(s.bic), s.degenerate ? "1" : "0", s.k == best_k ? "1" : "0"});
  }
  write_file_atomic(out_path(config, "bic_table.csv"), csv.str());
}

void write_cluster_table(const PipelineConfig& config, const Clustering& clustering,
                         const NormalizationParams& params) {
  CsvWriter csv;
  std::vector<std::string> header = {"feature"};
  for (int c = 0; c < clustering.k; ++c) header.push_back("cluster_" + std::to_string(c));
  csv.row(header);
  std::vector<std::vector<double>> raw;
  raw.reserve(std::size_t(clustering.k));
  for (int c = 0; c < clustering.k; ++c) {
    raw.push_back(denormalize(clustering.centroids[std::size_t(c)], params));
  }
  for (std::size_t j = 0; j < kUserFeatureNames.size(); ++j) {
    std::vector<std::string> row = {kUserFeatureNames[j]};
    for (int c = 0; c < clustering.k; ++c) row.push_back(format_double(raw[std::size_t(c)][j], 2));
    csv.row(row);
  }
  std::vector<std::string> totals = {"total_users"};
  for (int c = 0; c < clustering.k; ++c) {
    totals.push_back(std::to_string(clustering.cluster_sizes[std::size_t(c)]));
  }
  csv.row(totals);
  write_file_atomic(out_path(config, "cluster_table.csv"), csv.str());
}

void write_id_column(const PipelineConfig& config, const char* name, const char* header,
                     std::span<const std::string> ids) {
  CsvWriter csv;
  csv.row({header});
  for (const std::string& id : ids) csv.row({id});
  write_file_atomic(out_path(config, name), csv.str());
}

void write_user_features(const PipelineConfig& config, const Corpus& corpus) {
  CsvWriter csv;
  std::vector<std::string> header = {"user_id"};
  header.insert(header.end(), kUserFeatureNames.begin(), kUserFeatureNames.end());
  csv.row(header);
  for (const UserRecord& u : corpus.users()) {
    std::vector<std::string> row = {u.user_id};
    for (double v : user_features(u).as_array()) row.push_back(format_double(v, 4));
    csv.row(row);
  }
  write_file_atomic(out_path(config, "user_features.csv"), csv.str());
}

void write_entity_features(const PipelineConfig& config, const Corpus& corpus,
                           std::span<const std::string> business_ids) {
  CsvWriter reviews;
  std::vector<std::string> rheader = {"review_id", "business_id"};
  rheader.insert(rheader.end(), kReviewFeatureNames.begin(), kReviewFeatureNames.end());
  reviews.row(rheader);
  CsvWriter businesses;
  std::vector<std::string> bheader = {"business_id"};
  bheader.insert(bheader.end(), kBusinessFeatureNames.begin(), kBusinessFeatureNames.end());
  businesses.row(bheader);

  for (const std::string& id : business_ids) {
    auto idx = corpus.reviews_of_business(id);
    auto feats = review_features_for_business(id, corpus, config.etf_window_days);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      std::vector<std::string> row = {corpus.reviews()[idx[i]].review_id, id};
      for (double v : feats[i].as_array()) row.push_back(format_double(v, 4));
      reviews.row(row);
    }
    std::vector<std::string> row = {id};
    for (double v : business_features(id, corpus).as_array()) {
      row.push_back(format_double(v, 4));
    }
    businesses.row(row);
  }
  write_file_atomic(out_path(config, "review_features.csv"), reviews.str());
  write_file_atomic(out_path(config, "business_features.csv"), businesses.str());
}

void write_rsd_outputs(const PipelineConfig& config, const SpikyResult& rsd) {
  CsvWriter daily;
  daily.row({"business_id", "date", "polarity", "count"});
  CsvWriter fences_csv;
  fences_csv.row({"business_id", "polarity", "active_days", "q1", "q2", "q3", "iqr", "uof", "lof"});
  CsvWriter spikes;
  spikes.row({"business_id", "date", "polarity", "count", "uof"});

  for (const BusinessRsd& b : rsd.businesses) {
    for (Polarity p : {Polarity::Positive, Polarity::Negative}) {
      for (const auto& [day, n] : b.series.counts(p)) {
        daily.row({b.series.business_id, format_date(day), to_string(p), std::to_string(n)});
      }
      const auto& fence = p == Polarity::Positive ? b.positive_fences : b.negative_fences;
      if (fence) {
        fences_csv.row({b.series.business_id, to_string(p),
                        std::to_string(b.series.counts(p).size()), format_double(fence->q1, 2),
                        format_double(fence->q2, 2), format_double(fence->q3, 2),
                        format_double(fence->iqr, 2), format_double(fence->uof, 2),
                        format_double(fence->lof, 2)});
      }
    }
    for (const Spike& s : b.spikes) {
      spikes.row({s.business_id, format_date(s.date), to_string(s.polarity),
                  std::to_string(s.count), format_double(s.fence, 2)});
    }
  }
  write_file_atomic(out_path(config, "daily_counts.csv"), daily.str());
  write_file_atomic(out_path(config, "fences.csv"), fences_csv.str());
  write_file_atomic(out_path(config, "spike_report.csv"), spikes.str());

  CsvWriter stats;
  stats.row({"metric", "value"});
  stats.row({"considered", std::to_string(rsd.considered)});
  stats.row({"spiky", std::to_string(rsd.spiky)});
  stats.row({"skipped_not_enough_data", std::to_string(rsd.skipped_not_enough_data)});
  stats.row({"spiky_fraction", format_double(rsd.spiky_fraction, 6)});
  stats.row({"window_start", format_date(config.window.start)});
  stats.row({"window_end", format_date(config.window.end)});
  write_file_atomic(out_path(config, "rsd_stats.csv"), stats.str());
}

void write_plots(const PipelineConfig& config, const std::vector<BusinessRsd>& businesses,
                 const std::vector<std::string>& spiky_ids) {
  if (config.max_plots == 0) return;
  std::set<std::string> spiky(spiky_ids.begin(), spiky_ids.end());
  // Spiky businesses first, then the rest, alphabetical within each group.
  std::vector<const BusinessRsd*> order;
  order.reserve(businesses.size());
  for (const auto& b : businesses) order.push_back(&b);
  std::sort(order.begin(), order.end(), [&](const BusinessRsd* a, const BusinessRsd* b) {
    bool sa = spiky.contains(a->series.business_id), sb = spiky.contains(b->series.business_id);
    if (sa != sb) return sa;
    return a->series.business_id < b->series.business_id;
  });
  fs::path plot_dir = fs::path(config.out_dir) / "plots";
  int emitted = 0;
  for (const BusinessRsd* b : order) {
    if (emitted >= config.max_plots) break;
    const std::string& id = b->series.business_id;
    write_file_atomic(plot_dir / ("timeline_" + id + ".svg"), timeline_svg(*b));
    if (b->positive_fences) {
      write_file_atomic(plot_dir / ("box_" + id + "_positive.svg"),
                        box_whisker_svg(*b, Polarity::Positive));
    }
    if (b->negative_fences) {
      write_file_atomic(plot_dir / ("box_" + id + "_negative.svg"),
                        box_whisker_svg(*b, Polarity::Negative));
    }
    ++emitted;
  }
}

const std::array<const char*, 14> kScoreFeatureColumns = {
    "RD", "EXT", "ETF", "ISR", "PCW", "PP1", "EXC",
    "MNR", "PR", "NR", "avgRD", "ERD", "ETG", "RL"};

void append_score_row(CsvWriter& csv, const SpamScore& s, const char* kind,
                      const std::string& business_id) {
  std::unordered_map<std::string, double> fmap(s.f_values.begin(), s.f_values.end());
  std::vector<std::string> row = {s.subject_id, kind, business_id};
  for (const char* col : kScoreFeatureColumns) {
    auto it = fmap.find(col);
    row.push_back(it == fmap.end() ? std::string() : format_double(it->second, 6));
  }
  row.push_back(format_double(s.score, 6));
  row.push_back(s.flagged ? "1" : "0");
  row.push_back(s.degenerate_population ? "1" : "0");
  csv.row(row);
}

// ---- stage implementations -------------------------------------------------

}  // namespace

IngestSummary stage_ingest(const PipelineConfig& config) {
  validate_config(config);
  if (config.user_path.empty() || config.review_path.empty() || config.business_path.empty()) {
    throw_config("ingest needs --users, --reviews and --businesses input paths");
  }
  IngestOptions options;
  options.policy = config.policy;
  options.max_error_rate = config.max_error_rate;
  options.window = config.window;
  IngestResult result = parse_corpus(config.user_path, config.review_path, config.business_path,
                                     options);
  fs::create_directories(config.out_dir);
  snapshot(result.corpus, config.resolved_snapshot_path());
  write_ingest_report(config, result);
  return {result.stats};
}

ClusterSummary stage_cluster(const PipelineConfig& config) {
  validate_config(config);
  Corpus corpus = load_corpus(config, "cluster");

  std::vector<std::vector<double>> vectors;
  std::vector<std::string> ids;
  vectors.reserve(corpus.users().size());
  ids.reserve(corpus.users().size());
  for (const UserRecord& u : corpus.users()) {
    auto arr = user_features(u).as_array();
    vectors.emplace_back(arr.begin(), arr.end());
    ids.push_back(u.user_id);
  }

  NormalizedVectors normalized = zscore_normalize(vectors);
  SweepResult sweep = sweep_k(normalized.vectors, config.k_min, config.k_max, config.restarts,
                              config.seed);
  PopularCluster popular = select_popular_cluster(sweep.best, normalized.params,
                                                  reference_year(corpus), ids);

  write_bic_table(config, sweep.scores, sweep.best_k);
  write_cluster_table(config, sweep.best, normalized.params);
  write_id_column(config, "popular_users.csv", "user_id", popular.member_ids);
  if (config.export_features) write_user_features(config, corpus);

  return {sweep.best_k, sweep.scores, std::move(popular)};
}

ExtractSummary stage_extract(const PipelineConfig& config) {
  validate_config(config);
  Corpus corpus = load_corpus(config, "extract");
  fs::path popular_path = out_path(config, "popular_users.csv");
  require_artifact(popular_path, "cluster");
  std::vector<std::string> popular = read_id_column(popular_path);

  std::vector<std::string> extracted = extract_businesses(popular, corpus, config.min_reviews);
  write_id_column(config, "extracted_businesses.csv", "business_id", extracted);
  return {std::move(extracted)};
}

RsdSummary stage_rsd(const PipelineConfig& config) {
  validate_config(config);
  Corpus corpus = load_corpus(config, "rsd");
  fs::path extracted_path = out_path(config, "extracted_businesses.csv");
  require_artifact(extracted_path, "extract");
  std::vector<std::string> extracted = read_id_column(extracted_path);

  SpikyResult rsd = spiky_businesses(extracted, corpus, config.window, config.min_active_days);
  write_rsd_outputs(config, rsd);
  write_plots(config, rsd.businesses, rsd.spiky_ids);

  return {rsd.spiky_ids, rsd.considered, rsd.spiky, rsd.skipped_not_enough_data,
          rsd.spiky_fraction};
}

ScoreSummary stage_score(const PipelineConfig& config) {
  validate_config(config);
  Corpus corpus = load_corpus(config, "score");
  fs::path extracted_path = out_path(config, "extracted_businesses.csv");
  require_artifact(extracted_path, "extract");
  std::vector<std::string> extracted = read_id_column(extracted_path);

  OrientationTable review_dirs = resolve_orientations(config, default_review_orientations());
  OrientationTable business_dirs = resolve_orientations(config, default_business_orientations());

  ScoreSummary summary;
  CsvWriter csv;
  std::vector<std::string> header = {"subject_id", "kind", "business_id"};
  for (const char* col : kScoreFeatureColumns) header.push_back(std::string("f_") + col);
  header.push_back("score");
  header.push_back("flagged");
  header.push_back("degenerate");
  csv.row(header);

  for (const std::string& business_id : extracted) {
    auto scores = score_reviews(business_id, corpus, review_dirs, config.s_threshold);
    for (const auto& [review_id, s] : scores) {
      append_score_row(csv, s, "review", business_id);
      ++summary.reviews_scored;
      if (s.flagged) ++summary.reviews_flagged;
    }
  }
  if (extracted.size() >= 2) {
    auto scores = score_businesses(extracted, corpus, business_dirs, config.s_threshold);
    for (const auto& [business_id, s] : scores) {
      append_score_row(csv, s, "business", business_id);
      ++summary.businesses_scored;
      if (s.flagged) ++summary.businesses_flagged;
    }
  }
  write_file_atomic(out_path(config, "score_report.csv"), csv.str());

  if (config.export_features) write_entity_features(config, corpus, extracted);
  return summary;
}

QuarantineSummary stage_quarantine(const PipelineConfig& config) {
  validate_config(config);
  Corpus corpus = load_corpus(config, "quarantine");
  fs::path popular_path = out_path(config, "popular_users.csv");
  require_artifact(popular_path, "cluster");
  fs::path spikes_path = out_path(config, "spike_report.csv");
  require_artifact(spikes_path, "rsd");
  fs::path scores_path = out_path(config, "score_report.csv");
  require_artifact(scores_path, "score");

  std::vector<std::string> popular = read_id_column(popular_path);

  std::set<std::string> spiky;
  for (auto& row : read_csv(spikes_path)) {
    if (!row.empty() && row[0] != "business_id") spiky.insert(row[0]);
  }

  // Per-business review spam scores from the score report (only the score
  // column matters for the trusted mean).
  std::unordered_map<std::string, std::map<std::string, SpamScore>> review_scores;
  std::set<std::string> scored_businesses;
  {
    auto rows = read_csv(scores_path);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.size() < 20) continue;
      const std::string& kind = row[1];
      if (kind != "review") {
        scored_businesses.insert(row[0]);
        continue;
      }
      SpamScore s;
      s.subject_id = row[0];
      s.score = std::stod(row[17]);
      s.flagged = row[18] == "1";
      review_scores[row[2]].emplace(row[0], std::move(s));
      scored_businesses.insert(row[2]);
    }
  }

  std::map<std::string, TrustScore> trust;
  CsvWriter trust_csv;
  trust_csv.row({"business_id", "t_b", "basis_count", "fallback"});
  for (const auto& [business_id, scores] : review_scores) {
    trust.emplace(business_id, trusted_score(business_id, scores, corpus, config.s_threshold,
                                             config.tb_full_count));
  }
  for (const auto& [business_id, t] : trust) {
    trust_csv.row({business_id, format_double(t.t_b, 6), std::to_string(t.basis_count),
                   t.fallback ? "1" : "0"});
  }
  write_file_atomic(out_path(config, "trust_scores.csv"), trust_csv.str());

  QuarantineSummary summary;
  summary.reports = quarantine_sweep(popular, spiky, trust, corpus, config.theta_min,
                                     config.theta_max, config.tolerance,
                                     config.strict_quarantine);

  CsvWriter q_csv;
  q_csv.row({"threshold", "quarantined_count", "percentage", "user_ids"});
  for (const QuarantineReport& rep : summary.reports) {
    std::string joined;
    for (const std::string& id : rep.quarantined) {
      if (!joined.empty()) joined += ';';
      joined += id;
    }
    q_csv.row({std::to_string(rep.threshold), std::to_string(rep.quarantined.size()),
               format_double(rep.percentage * 100.0, 2), joined});
  }
  write_file_atomic(out_path(config, "quarantine_report.csv"), q_csv.str());

  CsvWriter ev_csv;
  ev_csv.row({"user_id", "business_id", "review_id", "stars", "t_b", "deviation"});
  for (const EvidenceRow& row :
       deception_evidence(popular, spiky, trust, corpus, config.tolerance)) {
    ev_csv.row({row.user_id, row.business_id, row.review_id, std::to_string(row.stars),
                format_double(row.t_b, 6), format_double(row.deviation, 6)});
  }
  write_file_atomic(out_path(config, "evidence.csv"), ev_csv.str());

  return summary;
}

void stage_report(const PipelineConfig& config) {
  validate_config(config);
  fs::path daily_path = out_path(config, "daily_counts.csv");
  require_artifact(daily_path, "rsd");
  fs::path fences_path = out_path(config, "fences.csv");
  require_artifact(fences_path, "rsd");
  fs::path stats_path = out_path(config, "rsd_stats.csv");
  require_artifact(stats_path, "rsd");

  DateWindow window = config.window;
  for (auto& row : read_csv(stats_path)) {
    if (row.size() < 2) continue;
    if (row[0] == "window_start") {
      if (auto d = parse_date(row[1])) window.start = *d;
    } else if (row[0] == "window_end") {
      if (auto d = parse_date(row[1])) window.end = *d;
    }
  }

  std::map<std::string, BusinessRsd> businesses;
  for (auto& row : read_csv(daily_path)) {
    if (row.size() < 4 || row[0] == "business_id") continue;
    BusinessRsd& b = businesses[row[0]];
    b.series.business_id = row[0];
    b.series.window = window;
    auto day = parse_date(row[1]);
    if (!day) throw_data("daily_counts.csv: bad date " + row[1]);
    (row[2] == "positive" ? b.series.positive : b.series.negative)[*day] = std::stoi(row[3]);
  }
  for (auto& row : read_csv(fences_path)) {
    if (row.size() < 9 || row[0] == "business_id") continue;
    auto it = businesses.find(row[0]);
    if (it == businesses.end()) continue;
    FencePair f;
    f.q1 = std::stod(row[3]);
    f.q2 = std::stod(row[4]);
    f.q3 = std::stod(row[5]);
    f.iqr = std::stod(row[6]);
    f.uof = std::stod(row[7]);
    f.lof = std::stod(row[8]);
    (row[1] == "positive" ? it->second.positive_fences : it->second.negative_fences) = f;
  }
  std::vector<std::string> spiky_ids;
  fs::path spikes_path = out_path(config, "spike_report.csv");
  if (fs::exists(spikes_path)) {
    for (auto& row : read_csv(spikes_path)) {
      if (row.size() < 5 || row[0] == "business_id") continue;
      auto it = businesses.find(row[0]);
      if (it == businesses.end()) continue;
      auto day = parse_date(row[1]);
      if (!day) continue;
      it->second.spikes.push_back({row[0], *day,
                                   row[2] == "positive" ? Polarity::Positive : Polarity::Negative,
                                   std::stoi(row[3]), std::stod(row[4])});
      spiky_ids.push_back(row[0]);
    }
  }

  std::vector<BusinessRsd> ordered;
  ordered.reserve(businesses.size());
  for (auto& [id, b] : businesses) ordered.push_back(std::move(b));
  std::sort(spiky_ids.begin(), spiky_ids.end());
  spiky_ids.erase(std::unique(spiky_ids.begin(), spiky_ids.end()), spiky_ids.end());
  write_plots(config, ordered, spiky_ids);
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  validate_config(config);
  fs::create_directories(config.out_dir);

  PipelineResult result;
  std::vector<std::pair<std::string, double>> timings;
  std::string current_stage;
  auto timed = [&](const char* name, auto&& fn) {
    current_stage = name;
    auto t0 = std::chrono::steady_clock::now();
    fn();
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    timings.emplace_back(name, dt.count());
  };

  try {
    timed("ingest", [&] { result.ingest = stage_ingest(config); });
    timed("cluster", [&] { result.cluster = stage_cluster(config); });
    timed("extract", [&] { result.extract = stage_extract(config); });
    timed("rsd", [&] { result.rsd = stage_rsd(config); });
    timed("score", [&] { result.score = stage_score(config); });
    timed("quarantine", [&] { result.quarantine = stage_quarantine(config); });
  } catch (const std::exception& e) {
    write_file_atomic(out_path(config, "FAILED"),
                      "stage: " + current_stage + "\nerror: " + e.what() + "\n");
    throw;
  }
  fs::remove(out_path(config, "FAILED"));

  // Manifest: everything needed to compare two runs, no volatile fields.
  json manifest;
  manifest["tool"] = "reviewguard";
  manifest["seed"] = config.seed;
  manifest["config"] = {
      {"users", config.user_path},
      {"reviews", config.review_path},
      {"businesses", config.business_path},
      {"snapshot", config.resolved_snapshot_path().string()},
      {"window_start", format_date(config.window.start)},
      {"window_end", format_date(config.window.end)},
      {"k_min", config.k_min},
      {"k_max", config.k_max},
      {"restarts", config.restarts},
      {"min_reviews", config.min_reviews},
      {"min_active_days", config.min_active_days},
      {"s_threshold", config.s_threshold},
      {"tolerance", config.tolerance},
      {"theta_min", config.theta_min},
      {"theta_max", config.theta_max},
      {"etf_window_days", config.etf_window_days},
      {"orientations", config.orientation_path},
      {"policy", config.policy == LinkRepairPolicy::DropDangling ? "drop" : "stub"},
      {"max_error_rate", config.max_error_rate},
      {"export_features", config.export_features},
      {"max_plots", config.max_plots},
      {"strict_quarantine", config.strict_quarantine},
      {"tb_full_count", config.tb_full_count},
  };
  manifest["counts"] = {
      {"users_parsed", result.ingest.stats.users.parsed},
      {"reviews_parsed", result.ingest.stats.reviews.parsed},
      {"businesses_parsed", result.ingest.stats.businesses.parsed},
      {"dangling_dropped", result.ingest.stats.dangling_dropped},
      {"best_k", result.cluster.best_k},
      {"popular_cluster_index", result.cluster.popular.cluster_index},
      {"popular_users", result.cluster.popular.member_ids.size()},
      {"extracted_businesses", result.extract.business_ids.size()},
      {"rsd_considered", result.rsd.considered},
      {"spiky_businesses", result.rsd.spiky},
      {"rsd_skipped_not_enough_data", result.rsd.skipped_not_enough_data},
      {"spiky_fraction", result.rsd.spiky_fraction},
      {"reviews_scored", result.score.reviews_scored},
      {"reviews_flagged", result.score.reviews_flagged},
      {"businesses_scored", result.score.businesses_scored},
      {"businesses_flagged", result.score.businesses_flagged},
  };
  json quarantined = json::object();
  for (const QuarantineReport& rep : result.quarantine.reports) {
    quarantined[std::to_string(rep.threshold)] = rep.quarantined.size();
  }
  manifest["counts"]["quarantined_by_threshold"] = quarantined;

  // Artifact digests over everything but the manifest/timing files themselves.
  json outputs = json::object();
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(config.out_dir)) {
    if (!entry.is_regular_file()) continue;
    fs::path rel = fs::relative(entry.path(), config.out_dir);
    if (rel == "manifest.json" || rel == "timings.csv") continue;
    files.push_back(rel);
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& rel : files) {
    outputs[rel.generic_string()] = sha256_file(fs::path(config.out_dir) / rel);
  }
  manifest["outputs"] = outputs;
  write_file_atomic(out_path(config, "manifest.json"), manifest.dump(2) + "\n");

  CsvWriter timing_csv;
  timing_csv.row({"stage", "seconds"});
  for (const auto& [name, seconds] : timings) {
    timing_csv.row({name, format_double(seconds, 3)});
  }
  write_file_atomic(out_path(config, "timings.csv"), timing_csv.str());

  return result;
}

}  // namespace reviewguard
