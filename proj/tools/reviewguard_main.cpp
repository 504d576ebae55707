// Command-line front end: one subcommand per analysis stage plus a one-shot
// `run`, a synthetic-corpus generator and a plot re-renderer. Exit codes:
// 0 ok, 1 usage/config, 2 data, 3 internal.

#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "reviewguard/config.hpp"
#include "reviewguard/error.hpp"
#include "reviewguard/pipeline.hpp"
#include "reviewguard/synthgen.hpp"

namespace {

using namespace reviewguard;

struct CliState {
  PipelineConfig config;
  std::string window_start, window_end, policy;
  ScenarioSpec scenario;
  std::string scenario_window_start, scenario_window_end;
};

void finalize_config(CliState& state) {
  if (!state.window_start.empty()) {
    auto d = parse_date(state.window_start);
    if (!d) throw_config("--window-start: expected YYYY-MM-DD");
    state.config.window.start = *d;
  }
  if (!state.window_end.empty()) {
    auto d = parse_date(state.window_end);
    if (!d) throw_config("--window-end: expected YYYY-MM-DD");
    state.config.window.end = *d;
  }
  if (!state.policy.empty()) {
    if (state.policy == "drop") state.config.policy = LinkRepairPolicy::DropDangling;
    else if (state.policy == "stub") state.config.policy = LinkRepairPolicy::StubDangling;
    else throw_config("--policy: expected drop or stub");
  }
}

void finalize_scenario(CliState& state) {
  state.scenario.seed = state.config.seed;
  if (!state.scenario_window_start.empty()) {
    auto d = parse_date(state.scenario_window_start);
    if (!d) throw_config("--synth-window-start: expected YYYY-MM-DD");
    state.scenario.window.start = *d;
  }
  if (!state.scenario_window_end.empty()) {
    auto d = parse_date(state.scenario_window_end);
    if (!d) throw_config("--synth-window-end: expected YYYY-MM-DD");
    state.scenario.window.end = *d;
  }
}

void add_pipeline_options(CLI::App& app, CliState& state) {
  PipelineConfig& c = state.config;
  app.add_option("--users", c.user_path, "User record file (NDJSON)");
  app.add_option("--reviews", c.review_path, "Review record file (NDJSON)");
  app.add_option("--businesses", c.business_path, "Business record file (NDJSON)");
  app.add_option("--snapshot", c.snapshot_path, "Corpus snapshot path");
  app.add_option("--out", c.out_dir, "Output directory");
  app.add_option("--window-start", state.window_start, "Analysis window start (YYYY-MM-DD)");
  app.add_option("--window-end", state.window_end, "Analysis window end (YYYY-MM-DD)");
  app.add_option("--k-min", c.k_min, "Smallest cluster count in the sweep");
  app.add_option("--k-max", c.k_max, "Largest cluster count in the sweep");
  app.add_option("--restarts", c.restarts, "Seeded restarts per k");
  app.add_option("--seed", c.seed, "Random seed");
  app.add_option("--min-reviews", c.min_reviews, "Review-count guard for business extraction");
  app.add_option("--min-active-days", c.min_active_days, "Active days required before fences");
  app.add_option("--s-threshold", c.s_threshold, "Spam-score flagging threshold");
  app.add_option("--tolerance", c.tolerance, "Deceptive-rating tolerance band");
  app.add_option("--theta-min", c.theta_min, "Smallest quarantine threshold");
  app.add_option("--theta-max", c.theta_max, "Largest quarantine threshold");
  app.add_option("--etf-window-days", c.etf_window_days, "Early-timeframe decay window");
  app.add_option("--orientations", c.orientation_path, "feature=H|L orientation table");
  app.add_option("--policy", state.policy, "Dangling-reference policy: drop|stub");
  app.add_option("--max-error-rate", c.max_error_rate, "Per-file malformed-line budget");
  app.add_flag("--export-features", c.export_features, "Also write feature-matrix CSVs");
  app.add_option("--max-plots", c.max_plots, "Businesses to plot (0 disables)");
  app.add_flag("--strict-quarantine", c.strict_quarantine,
               "Quarantine on count > threshold instead of >=");
  app.add_flag("--tb-full-count", c.tb_full_count,
               "Trusted score divides by all reviews, not the non-deceptive basis");
}

void add_scenario_options(CLI::App& app, CliState& state) {
  ScenarioSpec& s = state.scenario;
  app.add_option("--ordinary-users", s.n_ordinary_users, "Ordinary account count");
  app.add_option("--popular-users", s.n_popular_users, "Popular account count");
  app.add_option("--spammers", s.n_spammer_popular_users, "Deceptive popular accounts");
  app.add_option("--businesses-n", s.n_businesses, "Business count");
  app.add_option("--attacked", s.n_attacked_businesses, "Businesses under campaign attack");
  app.add_option("--active-prob", s.organic_active_day_prob, "Organic active-day probability");
  app.add_option("--daily-min", s.organic_daily_min, "Organic daily review minimum");
  app.add_option("--daily-max", s.organic_daily_max, "Organic daily review maximum");
  app.add_option("--per-popular", s.reviews_per_popular_user, "Reviews per honest popular user");
  app.add_option("--campaign-per-day", s.campaign.reviews_per_day, "Campaign reviews per day");
  app.add_option("--campaign-days", s.campaign.duration_days, "Campaign length in days");
  app.add_option("--campaign-star", s.campaign.star_value, "Campaign star value");
  app.add_option("--synth-window-start", state.scenario_window_start,
                 "Scenario window start (YYYY-MM-DD)");
  app.add_option("--synth-window-end", state.scenario_window_end,
                 "Scenario window end (YYYY-MM-DD)");
}

int dispatch(const std::string& command, CliState& state) {
  finalize_config(state);
  const PipelineConfig& config = state.config;

  if (command == "run") {
    PipelineResult r = run_pipeline(config);
    std::printf("popular users: %zu (cluster %d of k=%d)\n",
                r.cluster.popular.member_ids.size(), r.cluster.popular.cluster_index,
                r.cluster.best_k);
    std::printf("extracted businesses: %zu\n", r.extract.business_ids.size());
    std::printf("spiky businesses: %lld of %lld (%.2f%%)\n",
                static_cast<long long>(r.rsd.spiky), static_cast<long long>(r.rsd.considered),
                100.0 * r.rsd.spiky_fraction);
    for (const QuarantineReport& rep : r.quarantine.reports) {
      std::printf("quarantined@%d: %zu (%.2f%%)\n", rep.threshold, rep.quarantined.size(),
                  100.0 * rep.percentage);
    }
    std::printf("artifacts: %s\n", config.out_dir.c_str());
    return 0;
  }
  if (command == "ingest") {
    IngestSummary s = stage_ingest(config);
    std::printf("users: %lld, reviews: %lld, businesses: %lld (dangling dropped: %lld)\n",
                static_cast<long long>(s.stats.users.parsed),
                static_cast<long long>(s.stats.reviews.parsed),
                static_cast<long long>(s.stats.businesses.parsed),
                static_cast<long long>(s.stats.dangling_dropped));
    return 0;
  }
  if (command == "cluster") {
    ClusterSummary s = stage_cluster(config);
    std::printf("best k: %d, popular cluster: %d, members: %zu\n", s.best_k,
                s.popular.cluster_index, s.popular.member_ids.size());
    return 0;
  }
  if (command == "extract") {
    ExtractSummary s = stage_extract(config);
    std::printf("extracted businesses: %zu\n", s.business_ids.size());
    return 0;
  }
  if (command == "rsd") {
    RsdSummary s = stage_rsd(config);
    std::printf("spiky: %lld of %lld (%.2f%%), skipped: %lld\n",
                static_cast<long long>(s.spiky), static_cast<long long>(s.considered),
                100.0 * s.spiky_fraction, static_cast<long long>(s.skipped_not_enough_data));
    return 0;
  }
  if (command == "score") {
    ScoreSummary s = stage_score(config);
    std::printf("reviews scored: %lld (flagged %lld), businesses scored: %lld (flagged %lld)\n",
                static_cast<long long>(s.reviews_scored),
                static_cast<long long>(s.reviews_flagged),
                static_cast<long long>(s.businesses_scored),
                static_cast<long long>(s.businesses_flagged));
    return 0;
  }
  if (command == "quarantine") {
    QuarantineSummary s = stage_quarantine(config);
    for (const QuarantineReport& rep : s.reports) {
      std::printf("quarantined@%d: %zu (%.2f%%)\n", rep.threshold, rep.quarantined.size(),
                  100.0 * rep.percentage);
    }
    return 0;
  }
  if (command == "synth") {
    finalize_scenario(state);
    GeneratedFiles files = generate(state.scenario, config.out_dir);
    std::printf("wrote %s, %s, %s\nground truth: %s\n", files.user_path.c_str(),
                files.review_path.c_str(), files.business_path.c_str(),
                files.ground_truth_path.c_str());
    return 0;
  }
  if (command == "report") {
    stage_report(config);
    std::printf("plots re-rendered under %s/plots\n", config.out_dir.c_str());
    return 0;
  }
  throw_internal("unhandled command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reviewguard - review-forensics pipeline: popular-reviewer clustering, "
               "rating-spike detection, spam scoring and account quarantine"};
  app.require_subcommand(1);
  app.fallthrough();

  CliState state;
  std::string config_file;
  app.add_option("--config", config_file, "key=value config file (flags take precedence)");

  const char* commands[] = {"run",   "ingest", "cluster",    "extract", "rsd",
                            "score", "quarantine", "synth", "report"};
  const char* descriptions[] = {
      "Run every stage end to end and write the manifest",
      "Parse and validate the record files into a snapshot",
      "Cluster users, pick the popular cluster",
      "List businesses rated by popular users",
      "Detect rating spikes on the extracted businesses",
      "Spam-score reviews and businesses",
      "Compute trusted scores and quarantine reports",
      "Generate a synthetic corpus with planted ground truth",
      "Re-render SVG plots from existing CSV reports"};

  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
    sub->fallthrough();
    if (std::string(commands[i]) == "synth") add_scenario_options(*sub, state);
  }
  add_pipeline_options(app, state);

  // Apply the config file and environment before flag values land: scan argv
  // for --config ourselves, since flags must override the file.
  for (int i = 1; i < argc; ++i) {
    std::string_view arg(argv[i]);
    if (arg == "--config" && i + 1 < argc) config_file = argv[i + 1];
    else if (arg.starts_with("--config=")) config_file = arg.substr(9);
  }
  try {
    if (!config_file.empty()) apply_config_file(state.config, config_file);
    apply_environment(state.config);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return 1;
  }

  try {
    for (const CLI::App* sub : app.get_subcommands()) {
      int rc = dispatch(sub->get_name(), state);
      if (rc != 0) return rc;
    }
    return 0;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.kind()) {
      case ErrorKind::Config: return 1;
      case ErrorKind::Data: return 2;
      case ErrorKind::Internal: return 3;
    }
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}
