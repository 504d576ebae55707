#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "reviewguard/csv.hpp"
#include "reviewguard/error.hpp"
#include "reviewguard/hash.hpp"
#include "reviewguard/pipeline.hpp"
#include "reviewguard/synthgen.hpp"

using namespace reviewguard;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag) {
    path = fs::temp_directory_path() / (std::string("rg_pipe_") + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ScenarioSpec desk_spec() {
  ScenarioSpec spec;
  spec.seed = 21;
  spec.n_ordinary_users = 150;
  spec.n_popular_users = 5;
  spec.n_spammer_popular_users = 2;
  spec.n_businesses = 12;
  spec.n_attacked_businesses = 4;
  spec.reviews_per_popular_user = 4;
  return spec;
}

PipelineConfig config_for(const GeneratedFiles& files, const fs::path& out) {
  PipelineConfig c;
  c.user_path = files.user_path.string();
  c.review_path = files.review_path.string();
  c.business_path = files.business_path.string();
  c.out_dir = out.string();
  c.window = {*parse_date("2015-01-01"), *parse_date("2016-12-31")};
  c.k_min = 2;
  c.k_max = 4;
  c.restarts = 2;
  c.seed = 5;
  c.max_plots = 3;
  return c;
}

std::map<std::string, std::string> hash_dir(const fs::path& dir,
                                            const std::set<std::string>& skip = {}) {
  std::map<std::string, std::string> hashes;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string rel = fs::relative(entry.path(), dir).generic_string();
    if (skip.contains(rel)) continue;
    hashes[rel] = sha256_file(entry.path());
  }
  return hashes;
}

}  // namespace

TEST_CASE("stage-by-stage equals the one-shot run bit for bit") {
  TempDir data("data1");
  GeneratedFiles files = generate(desk_spec(), data.path);

  TempDir staged_dir("staged");
  PipelineConfig staged = config_for(files, staged_dir.path);
  stage_ingest(staged);
  stage_cluster(staged);
  stage_extract(staged);
  stage_rsd(staged);
  stage_score(staged);
  stage_quarantine(staged);

  TempDir oneshot_dir("oneshot");
  PipelineConfig oneshot = config_for(files, oneshot_dir.path);
  run_pipeline(oneshot);

  // The one-shot run adds manifest.json and timings.csv on top.
  auto staged_hashes = hash_dir(staged_dir.path);
  auto oneshot_hashes = hash_dir(oneshot_dir.path, {"manifest.json", "timings.csv"});
  CHECK(staged_hashes == oneshot_hashes);
  CHECK(fs::exists(oneshot_dir.path / "manifest.json"));
  CHECK(fs::exists(oneshot_dir.path / "timings.csv"));
}

TEST_CASE("identical config and seed produce identical manifests") {
  TempDir data("data2");
  GeneratedFiles files = generate(desk_spec(), data.path);

  TempDir out("det");
  PipelineConfig config = config_for(files, out.path);
  run_pipeline(config);
  std::string first = sha256_file(out.path / "manifest.json");

  fs::remove_all(out.path);
  run_pipeline(config);
  std::string second = sha256_file(out.path / "manifest.json");
  CHECK(first == second);
}

TEST_CASE("the pipeline recovers the planted ground truth") {
  TempDir data("data3");
  ScenarioSpec spec = desk_spec();
  GeneratedFiles files = generate(spec, data.path);

  TempDir out("recover");
  PipelineConfig config = config_for(files, out.path);
  PipelineResult result = run_pipeline(config);

  CHECK(result.cluster.popular.member_ids == files.truth.popular_user_ids);
  CHECK(result.rsd.spiky_ids == files.truth.attacked_business_ids);
  REQUIRE(!result.quarantine.reports.empty());
  CHECK(result.quarantine.reports.front().threshold == 3);
  CHECK(result.quarantine.reports.front().quarantined == files.truth.spammer_user_ids);
}

TEST_CASE("the cluster table follows the per-cluster column layout") {
  TempDir data("data6");
  GeneratedFiles files = generate(desk_spec(), data.path);
  TempDir out("table");
  PipelineConfig config = config_for(files, out.path);
  config.k_min = 4;
  config.k_max = 4;
  stage_ingest(config);
  stage_cluster(config);

  auto rows = read_csv(out.path / "cluster_table.csv");
  REQUIRE(rows.size() == 10);  // header + 8 features + total_users
  REQUIRE(rows[0].size() == 5);
  CHECK(rows[0][0] == "feature");
  CHECK(rows[0][1] == "cluster_0");
  CHECK(rows[0][4] == "cluster_3");
  CHECK(rows[1][0] == "yelping_since");
  CHECK(rows[9][0] == "total_users");
  long long total = 0;
  for (int c = 1; c <= 4; ++c) total += std::stoll(rows[9][std::size_t(c)]);
  CHECK(total == 155);  // every user lands in exactly one cluster
}

TEST_CASE("manifest counts echo the run summary") {
  TempDir data("data7");
  GeneratedFiles files = generate(desk_spec(), data.path);
  TempDir out("manifest");
  PipelineConfig config = config_for(files, out.path);
  PipelineResult result = run_pipeline(config);

  std::string manifest = read_file(out.path / "manifest.json");
  auto expect = [&](const std::string& fragment) {
    CHECK(manifest.find(fragment) != std::string::npos);
  };
  expect("\"popular_users\": " + std::to_string(result.cluster.popular.member_ids.size()));
  expect("\"spiky_businesses\": " + std::to_string(result.rsd.spiky));
  expect("\"extracted_businesses\": " + std::to_string(result.extract.business_ids.size()));
  expect("\"seed\": 5");
}

TEST_CASE("feature export writes the three matrices") {
  TempDir data("data8");
  GeneratedFiles files = generate(desk_spec(), data.path);
  TempDir out("export");
  PipelineConfig config = config_for(files, out.path);
  config.export_features = true;
  stage_ingest(config);
  stage_cluster(config);
  stage_extract(config);
  stage_score(config);

  auto users = read_csv(out.path / "user_features.csv");
  REQUIRE(!users.empty());
  CHECK(users[0] == std::vector<std::string>{"user_id", "yelping_since", "average_star",
                                             "elite_count", "fans", "friends_count",
                                             "review_count", "total_votes", "total_compliments"});
  CHECK(users.size() == 156);  // header + every user

  auto reviews = read_csv(out.path / "review_features.csv");
  REQUIRE(!reviews.empty());
  CHECK(reviews[0] == std::vector<std::string>{"review_id", "business_id", "RD", "EXT", "ETF",
                                               "ISR", "PCW", "PP1", "EXC"});
  auto businesses = read_csv(out.path / "business_features.csv");
  REQUIRE(!businesses.empty());
  CHECK(businesses[0] == std::vector<std::string>{"business_id", "MNR", "PR", "NR", "avgRD",
                                                  "ERD", "ETG", "RL"});
}

TEST_CASE("a failing stage leaves a FAILED marker and a nonzero-path error") {
  TempDir data("data4");
  GeneratedFiles files = generate(desk_spec(), data.path);
  TempDir out("failmark");
  PipelineConfig config = config_for(files, out.path);
  config.review_path = (data.path / "missing.ndjson").string();
  CHECK_THROWS_AS(run_pipeline(config), Error);
  REQUIRE(fs::exists(out.path / "FAILED"));
  std::string marker = read_file(out.path / "FAILED");
  CHECK(marker.find("ingest") != std::string::npos);
}

TEST_CASE("stages demand their upstream artifacts by name") {
  TempDir out("deps");
  PipelineConfig config;
  config.out_dir = out.path.string();

  try {
    stage_cluster(config);
    FAIL("expected a dependency error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Data);
    CHECK(std::string(e.what()).find("ingest") != std::string::npos);
  }
  try {
    stage_rsd(config);
    FAIL("expected a dependency error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("ingest") != std::string::npos);
  }
  try {
    stage_report(config);
    FAIL("expected a dependency error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("rsd") != std::string::npos);
  }
}

TEST_CASE("report re-renders identical plots from the CSVs alone") {
  TempDir data("data5");
  GeneratedFiles files = generate(desk_spec(), data.path);
  TempDir out("rerender");
  PipelineConfig config = config_for(files, out.path);
  stage_ingest(config);
  stage_cluster(config);
  stage_extract(config);
  stage_rsd(config);

  auto originals = hash_dir(out.path / "plots");
  REQUIRE(!originals.empty());
  fs::remove_all(out.path / "plots");

  stage_report(config);
  auto rerendered = hash_dir(out.path / "plots");
  CHECK(originals == rerendered);
}

TEST_CASE("config file, environment and flags layer in order") {
  TempDir dir("conf");
  fs::path conf = dir.path / "run.conf";
  {
    std::ofstream out(conf);
    out << "# comment\n";
    out << "seed = 99\n";
    out << "k_max= 5\n";
    out << "out =" << (dir.path / "from_file").string() << "\n";
    out << "s_threshold = 0.25\n";
    out << "policy = stub\n";
  }
  PipelineConfig config;
  apply_config_file(config, conf);
  CHECK(config.seed == 99);
  CHECK(config.k_max == 5);
  CHECK(config.s_threshold == doctest::Approx(0.25));
  CHECK(config.policy == LinkRepairPolicy::StubDangling);
  CHECK(config.out_dir == (dir.path / "from_file").string());

  // Environment overrides the file for the output dir only.
  setenv("REVIEWGUARD_OUT_DIR", (dir.path / "from_env").string().c_str(), 1);
  apply_environment(config);
  CHECK(config.out_dir == (dir.path / "from_env").string());
  unsetenv("REVIEWGUARD_OUT_DIR");

  // Flags are applied by the CLI after both; here that is a direct write.
  config.out_dir = (dir.path / "from_flag").string();
  CHECK(config.out_dir == (dir.path / "from_flag").string());
}

TEST_CASE("config files reject unknown keys and bad values") {
  TempDir dir("confbad");
  auto write_conf = [&](const char* name, const std::string& body) {
    fs::path p = dir.path / name;
    std::ofstream out(p);
    out << body;
    return p;
  };
  PipelineConfig config;
  CHECK_THROWS_AS(apply_config_file(config, write_conf("a.conf", "nope = 1\n")), Error);
  CHECK_THROWS_AS(apply_config_file(config, write_conf("b.conf", "k_min = many\n")), Error);
  CHECK_THROWS_AS(apply_config_file(config, write_conf("c.conf", "just a line\n")), Error);
  CHECK_THROWS_AS(apply_config_file(config, write_conf("d.conf", "window_start = 2015-99-01\n")),
                  Error);
  CHECK_THROWS_AS(apply_config_file(config, dir.path / "missing.conf"), Error);
}

TEST_CASE("config validation rejects out-of-range settings") {
  PipelineConfig config;
  config.k_min = 0;
  CHECK_THROWS_AS(validate_config(config), Error);
  config = {};
  config.s_threshold = 1.5;
  CHECK_THROWS_AS(validate_config(config), Error);
  config = {};
  config.theta_min = 11;
  CHECK_THROWS_AS(validate_config(config), Error);
  config = {};
  config.window = {*parse_date("2016-01-01"), *parse_date("2015-01-01")};
  CHECK_THROWS_AS(validate_config(config), Error);
  config = {};
  CHECK_NOTHROW(validate_config(config));
}
