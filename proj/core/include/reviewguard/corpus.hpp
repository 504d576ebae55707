#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "reviewguard/dates.hpp"

namespace reviewguard {

struct UserRecord {
  std::string user_id;
  int yelping_since = 0;  // calendar year
  double average_stars = 0.0;
  std::vector<int> elite_years;
  std::int64_t fan_count = 0;
  std::int64_t friend_count = 0;
  std::int64_t review_count = 0;
  std::map<std::string, std::int64_t> vote_counts;        // funny/useful/cool
  std::map<std::string, std::int64_t> compliment_counts;  // by compliment label
};

struct ReviewRecord {
  std::string review_id;
  std::string user_id;
  std::string business_id;
  int stars = 0;  // 1..5
  Date date{};
  std::string text;
};

struct BusinessRecord {
  std::string business_id;
  std::string name;
  double stars = 0.0;  // site-reported average
  std::int64_t review_count = 0;
};

// Immutable, cross-linked view of the three record collections. Records are
// held in canonical key order (sorted by id), so iteration, serialization and
// every downstream computation are independent of input file order. Safe to
// share across threads after construction.
class Corpus {
 public:
  Corpus() = default;

  // Sorts by key, builds indexes, and enforces key uniqueness and referential
  // integrity (every review must resolve to a user and a business).
  static Corpus build(std::vector<UserRecord> users, std::vector<ReviewRecord> reviews,
                      std::vector<BusinessRecord> businesses);

  std::span<const UserRecord> users() const { return users_; }
  std::span<const ReviewRecord> reviews() const { return reviews_; }
  std::span<const BusinessRecord> businesses() const { return businesses_; }

  const UserRecord* find_user(const std::string& id) const;
  const ReviewRecord* find_review(const std::string& id) const;
  const BusinessRecord* find_business(const std::string& id) const;

  // Indexes map an id to positions in reviews(), sorted ascending. A known id
  // with no reviews yields an empty span.
  std::span<const std::size_t> reviews_of_user(const std::string& user_id) const;
  std::span<const std::size_t> reviews_of_business(const std::string& business_id) const;

 private:
  std::vector<UserRecord> users_;
  std::vector<ReviewRecord> reviews_;
  std::vector<BusinessRecord> businesses_;
  std::unordered_map<std::string, std::size_t> user_by_id_;
  std::unordered_map<std::string, std::size_t> review_by_id_;
  std::unordered_map<std::string, std::size_t> business_by_id_;
  std::unordered_map<std::string, std::vector<std::size_t>> reviews_by_user_;
  std::unordered_map<std::string, std::vector<std::size_t>> reviews_by_business_;
};

// Derived user totals (elite_count = |elite_years|, totals = map sums).
std::int64_t total_votes(const UserRecord& u);
std::int64_t total_compliments(const UserRecord& u);

}  // namespace reviewguard
