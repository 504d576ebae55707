#include "reviewguard/ingest.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "reviewguard/error.hpp"

namespace reviewguard {

namespace {

using nlohmann::json;

std::int64_t get_count(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return 0;
  if (it->is_number()) return it->get<std::int64_t>();
  throw std::runtime_error(std::string("field '") + key + "' is not a number");
}

// yelping_since appears either as a bare year or as a "YYYY-..." date string.
int parse_year_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::runtime_error(std::string("missing field '") + key + "'");
  if (it->is_number_integer()) return it->get<int>();
  if (it->is_string()) {
    const std::string& s = it->get_ref<const std::string&>();
    if (s.size() >= 4) {
      int y = 0;
      bool digits = true;
      for (int i = 0; i < 4; ++i) {
        if (s[std::size_t(i)] < '0' || s[std::size_t(i)] > '9') { digits = false; break; }
        y = y * 10 + (s[std::size_t(i)] - '0');
      }
      if (digits) return y;
    }
  }
  throw std::runtime_error(std::string("field '") + key + "' is not a year");
}

// elite: array of years, comma-separated string, or (degenerate) a count.
std::vector<int> parse_elite(const json& j) {
  std::vector<int> years;
  auto it = j.find("elite");
  if (it == j.end() || it->is_null()) return years;
  if (it->is_array()) {
    for (const auto& e : *it) {
      if (e.is_number_integer()) years.push_back(e.get<int>());
      else if (e.is_string() && !e.get_ref<const std::string&>().empty())
        years.push_back(std::stoi(e.get<std::string>()));
    }
  } else if (it->is_string()) {
    const std::string& s = it->get_ref<const std::string&>();
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t comma = s.find(',', pos);
      std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (!tok.empty() && tok != "None") years.push_back(std::stoi(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  std::sort(years.begin(), years.end());
  return years;
}

std::int64_t parse_list_or_count(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return 0;
  if (it->is_array()) return std::int64_t(it->size());
  if (it->is_number()) return it->get<std::int64_t>();
  if (it->is_string()) {
    // "a,b,c" friend lists; "None" or "" mean zero
    const std::string& s = it->get_ref<const std::string&>();
    if (s.empty() || s == "None") return 0;
    return std::int64_t(std::count(s.begin(), s.end(), ',')) + 1;
  }
  throw std::runtime_error(std::string("field '") + key + "' has unsupported type");
}

UserRecord parse_user(const json& j) {
  UserRecord u;
  u.user_id = j.at("user_id").get<std::string>();
  u.yelping_since = parse_year_field(j, "yelping_since");
  u.average_stars = j.value("average_stars", 0.0);
  u.elite_years = parse_elite(j);
  u.fan_count = get_count(j, "fans");
  u.friend_count = parse_list_or_count(j, "friends");
  u.review_count = get_count(j, "review_count");
  if (auto it = j.find("votes"); it != j.end() && it->is_object()) {
    for (const auto& [label, n] : it->items()) u.vote_counts[label] = n.get<std::int64_t>();
  } else {
    for (const char* label : {"funny", "useful", "cool"}) {
      if (j.contains(label)) u.vote_counts[label] = get_count(j, label);
    }
  }
  if (auto it = j.find("compliments"); it != j.end() && it->is_object()) {
    for (const auto& [label, n] : it->items()) u.compliment_counts[label] = n.get<std::int64_t>();
  } else {
    for (const auto& [key, value] : j.items()) {
      if (key.rfind("compliment_", 0) == 0 && value.is_number()) {
        u.compliment_counts[key.substr(11)] = value.get<std::int64_t>();
      }
    }
  }
  return u;
}

void validate_user(const UserRecord& u) {
  if (u.user_id.empty()) throw std::runtime_error("empty user_id");
  if (u.review_count > 0 && (u.average_stars < 1.0 || u.average_stars > 5.0)) {
    throw std::runtime_error("average_stars out of [1,5]");
  }
  if (u.fan_count < 0 || u.friend_count < 0 || u.review_count < 0) {
    throw std::runtime_error("negative count");
  }
  for (const auto& [label, n] : u.vote_counts) {
    if (n < 0) throw std::runtime_error("negative vote count '" + label + "'");
  }
  for (const auto& [label, n] : u.compliment_counts) {
    if (n < 0) throw std::runtime_error("negative compliment count '" + label + "'");
  }
}

ReviewRecord parse_review(const json& j, const DateWindow& window) {
  ReviewRecord r;
  r.review_id = j.at("review_id").get<std::string>();
  r.user_id = j.at("user_id").get<std::string>();
  r.business_id = j.at("business_id").get<std::string>();
  if (!j.at("stars").is_number()) throw std::runtime_error("stars is not a number");
  double stars = j.at("stars").get<double>();
  if (stars != std::floor(stars) || stars < 1 || stars > 5) {
    throw std::runtime_error("stars not in {1..5}");
  }
  r.stars = int(stars);
  auto date = parse_date(j.at("date").get<std::string>());
  if (!date) throw std::runtime_error("malformed date");
  if (!window.contains(*date)) throw std::runtime_error("date outside timeframe");
  r.date = *date;
  r.text = j.value("text", std::string());
  if (r.review_id.empty()) throw std::runtime_error("empty review_id");
  return r;
}

BusinessRecord parse_business(const json& j) {
  BusinessRecord b;
  b.business_id = j.at("business_id").get<std::string>();
  b.name = j.value("name", std::string());
  b.stars = j.value("stars", 0.0);
  b.review_count = get_count(j, "review_count");
  if (b.business_id.empty()) throw std::runtime_error("empty business_id");
  if (b.review_count < 0) throw std::runtime_error("negative review_count");
  return b;
}

template <typename Record>
std::vector<Record> parse_file(const std::filesystem::path& path,
                               const std::function<Record(const json&)>& parse_one,
                               const IngestOptions& options, const char* what, FileStats& stats,
                               std::vector<std::string>& errors) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_data("cannot open " + std::string(what) + " file: " + path.string());
  std::vector<Record> records;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++stats.lines;
    try {
      json j = json::parse(line);
      records.push_back(parse_one(j));
      ++stats.parsed;
    } catch (const std::exception& e) {
      ++stats.invalid;
      errors.push_back(path.filename().string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (stats.lines == 0) throw_data("no records in " + std::string(what) + " file: " + path.string());
  double error_rate = double(stats.invalid) / double(stats.lines);
  if (error_rate > options.max_error_rate) {
    throw_data(std::string(what) + " file error rate " + std::to_string(error_rate) +
               " exceeds limit " + std::to_string(options.max_error_rate) + " (" +
               std::to_string(stats.invalid) + " of " + std::to_string(stats.lines) + " lines)");
  }
  return records;
}

}  // namespace

IngestResult parse_corpus(const std::filesystem::path& user_path,
                          const std::filesystem::path& review_path,
                          const std::filesystem::path& business_path,
                          const IngestOptions& options) {
  IngestResult result;
  auto users = parse_file<UserRecord>(
      user_path, [](const json& j) { auto u = parse_user(j); validate_user(u); return u; },
      options, "user", result.stats.users, result.line_errors);
  auto reviews = parse_file<ReviewRecord>(
      review_path, [&](const json& j) { return parse_review(j, options.window); },
      options, "review", result.stats.reviews, result.line_errors);
  auto businesses = parse_file<BusinessRecord>(
      business_path, [](const json& j) { return parse_business(j); },
      options, "business", result.stats.businesses, result.line_errors);

  std::unordered_set<std::string> user_ids, business_ids;
  user_ids.reserve(users.size());
  for (const auto& u : users) user_ids.insert(u.user_id);
  business_ids.reserve(businesses.size());
  for (const auto& b : businesses) business_ids.insert(b.business_id);

  if (options.policy == LinkRepairPolicy::DropDangling) {
    auto dangling = [&](const ReviewRecord& r) {
      return !user_ids.contains(r.user_id) || !business_ids.contains(r.business_id);
    };
    std::int64_t before = std::int64_t(reviews.size());
    std::erase_if(reviews, dangling);
    result.stats.dangling_dropped = before - std::int64_t(reviews.size());
  } else {
    // Stub policy: fabricate minimal records so dangling reviews survive.
    std::unordered_map<std::string, std::pair<double, int>> stub_business_stars;
    for (const auto& r : reviews) {
      if (!user_ids.contains(r.user_id)) {
        UserRecord stub;
        stub.user_id = r.user_id;
        stub.yelping_since = year_of(r.date);
        users.push_back(std::move(stub));
        user_ids.insert(r.user_id);
        ++result.stats.stubs_created;
      }
      if (!business_ids.contains(r.business_id)) {
        auto& [sum, n] = stub_business_stars[r.business_id];
        sum += r.stars;
        ++n;
      }
    }
    for (const auto& [id, agg] : stub_business_stars) {
      BusinessRecord stub;
      stub.business_id = id;
      stub.name = "(stub)";
      stub.stars = agg.first / agg.second;
      stub.review_count = agg.second;
      businesses.push_back(std::move(stub));
      ++result.stats.stubs_created;
    }
  }

  result.corpus = Corpus::build(std::move(users), std::move(reviews), std::move(businesses));
  return result;
}

}  // namespace reviewguard
