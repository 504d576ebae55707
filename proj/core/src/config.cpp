#include "reviewguard/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "reviewguard/error.hpp"

namespace reviewguard {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& value, const std::string& key) {
  T out{};
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || p != value.data() + value.size()) {
    throw_config("config key '" + key + "': cannot parse number from '" + value + "'");
  }
  return out;
}

double parse_real(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw_config("config key '" + key + "': cannot parse real from '" + value + "'");
  }
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw_config("config key '" + key + "': expected boolean, got '" + value + "'");
}

Date parse_date_or_throw(const std::string& value, const std::string& key) {
  auto d = parse_date(value);
  if (!d) throw_config("config key '" + key + "': expected YYYY-MM-DD, got '" + value + "'");
  return *d;
}

}  // namespace

void apply_config_file(PipelineConfig& c, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_config("cannot open config file: " + path.string());

  const std::map<std::string, std::function<void(const std::string&, const std::string&)>>
      setters = {
          {"users", [&](const std::string&, const std::string& v) { c.user_path = v; }},
          {"reviews", [&](const std::string&, const std::string& v) { c.review_path = v; }},
          {"businesses", [&](const std::string&, const std::string& v) { c.business_path = v; }},
          {"snapshot", [&](const std::string&, const std::string& v) { c.snapshot_path = v; }},
          {"out", [&](const std::string&, const std::string& v) { c.out_dir = v; }},
          {"window_start",
           [&](const std::string& k, const std::string& v) { c.window.start = parse_date_or_throw(v, k); }},
          {"window_end",
           [&](const std::string& k, const std::string& v) { c.window.end = parse_date_or_throw(v, k); }},
          {"k_min", [&](const std::string& k, const std::string& v) { c.k_min = parse_number<int>(v, k); }},
          {"k_max", [&](const std::string& k, const std::string& v) { c.k_max = parse_number<int>(v, k); }},
          {"restarts",
           [&](const std::string& k, const std::string& v) { c.restarts = parse_number<int>(v, k); }},
          {"seed",
           [&](const std::string& k, const std::string& v) { c.seed = parse_number<std::uint64_t>(v, k); }},
          {"min_reviews",
           [&](const std::string& k, const std::string& v) { c.min_reviews = parse_number<std::int64_t>(v, k); }},
          {"min_active_days",
           [&](const std::string& k, const std::string& v) { c.min_active_days = parse_number<int>(v, k); }},
          {"s_threshold",
           [&](const std::string& k, const std::string& v) { c.s_threshold = parse_real(v, k); }},
          {"tolerance",
           [&](const std::string& k, const std::string& v) { c.tolerance = parse_real(v, k); }},
          {"theta_min",
           [&](const std::string& k, const std::string& v) { c.theta_min = parse_number<int>(v, k); }},
          {"theta_max",
           [&](const std::string& k, const std::string& v) { c.theta_max = parse_number<int>(v, k); }},
          {"etf_window_days",
           [&](const std::string& k, const std::string& v) { c.etf_window_days = parse_number<int>(v, k); }},
          {"orientations",
           [&](const std::string&, const std::string& v) { c.orientation_path = v; }},
          {"policy",
           [&](const std::string& k, const std::string& v) {
             if (v == "drop") c.policy = LinkRepairPolicy::DropDangling;
             else if (v == "stub") c.policy = LinkRepairPolicy::StubDangling;
             else throw_config("config key '" + k + "': expected drop|stub, got '" + v + "'");
           }},
          {"max_error_rate",
           [&](const std::string& k, const std::string& v) { c.max_error_rate = parse_real(v, k); }},
          {"export_features",
           [&](const std::string& k, const std::string& v) { c.export_features = parse_bool(v, k); }},
          {"max_plots",
           [&](const std::string& k, const std::string& v) { c.max_plots = parse_number<int>(v, k); }},
          {"strict_quarantine",
           [&](const std::string& k, const std::string& v) { c.strict_quarantine = parse_bool(v, k); }},
          {"tb_full_count",
           [&](const std::string& k, const std::string& v) { c.tb_full_count = parse_bool(v, k); }},
      };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw_config(path.filename().string() + ":" + std::to_string(line_no) +
                   ": expected key=value");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw_config(path.filename().string() + ":" + std::to_string(line_no) +
                   ": unknown config key '" + key + "'");
    }
    it->second(key, value);
  }
}

void apply_environment(PipelineConfig& config) {
  if (const char* dir = std::getenv("REVIEWGUARD_OUT_DIR"); dir != nullptr && *dir != '\0') {
    config.out_dir = dir;
  }
}

void validate_config(const PipelineConfig& config) {
  if (config.window.start > config.window.end) throw_config("window start after window end");
  if (config.k_min < 1 || config.k_min > config.k_max) throw_config("invalid k range");
  if (config.restarts < 1) throw_config("restarts must be >= 1");
  if (config.min_reviews < 1) throw_config("min_reviews must be >= 1");
  if (config.min_active_days < 1) throw_config("min_active_days must be >= 1");
  if (config.s_threshold < 0 || config.s_threshold > 1) throw_config("s_threshold outside [0,1]");
  if (config.tolerance < 0 || config.tolerance > 4) throw_config("tolerance outside [0,4]");
  if (config.theta_min > config.theta_max || config.theta_min < 0) {
    throw_config("invalid theta range");
  }
  if (config.etf_window_days < 1) throw_config("etf_window_days must be >= 1");
  if (config.max_error_rate < 0 || config.max_error_rate > 1) {
    throw_config("max_error_rate outside [0,1]");
  }
  if (config.max_plots < 0) throw_config("max_plots must be >= 0");
  if (config.out_dir.empty()) throw_config("output directory not set");
}

}  // namespace reviewguard
