#include "reviewguard/corpus.hpp"

#include <algorithm>

#include "reviewguard/error.hpp"

namespace reviewguard {

namespace {

template <typename Record, typename KeyFn>
void sort_and_check_unique(std::vector<Record>& records, KeyFn key, const char* what) {
  std::sort(records.begin(), records.end(),
            [&](const Record& a, const Record& b) { return key(a) < key(b); });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (key(records[i - 1]) == key(records[i])) {
      throw_data(std::string("duplicate ") + what + " key: " + key(records[i]));
    }
  }
}

}  // namespace

Corpus Corpus::build(std::vector<UserRecord> users, std::vector<ReviewRecord> reviews,
                     std::vector<BusinessRecord> businesses) {
  Corpus c;
  c.users_ = std::move(users);
  c.reviews_ = std::move(reviews);
  c.businesses_ = std::move(businesses);

  sort_and_check_unique(c.users_, [](const UserRecord& u) -> const std::string& { return u.user_id; }, "user");
  sort_and_check_unique(c.reviews_, [](const ReviewRecord& r) -> const std::string& { return r.review_id; }, "review");
  sort_and_check_unique(c.businesses_, [](const BusinessRecord& b) -> const std::string& { return b.business_id; }, "business");

  for (const UserRecord& u : c.users_) {
    if (u.user_id.empty()) throw_data("empty user_id");
  }
  for (const BusinessRecord& b : c.businesses_) {
    if (b.business_id.empty()) throw_data("empty business_id");
  }

  c.user_by_id_.reserve(c.users_.size());
  for (std::size_t i = 0; i < c.users_.size(); ++i) c.user_by_id_.emplace(c.users_[i].user_id, i);
  c.business_by_id_.reserve(c.businesses_.size());
  for (std::size_t i = 0; i < c.businesses_.size(); ++i) {
    c.business_by_id_.emplace(c.businesses_[i].business_id, i);
  }
  c.review_by_id_.reserve(c.reviews_.size());
  for (std::size_t i = 0; i < c.reviews_.size(); ++i) {
    const ReviewRecord& r = c.reviews_[i];
    c.review_by_id_.emplace(r.review_id, i);
    if (!c.user_by_id_.contains(r.user_id)) {
      throw_data("review " + r.review_id + " references unknown user " + r.user_id);
    }
    if (!c.business_by_id_.contains(r.business_id)) {
      throw_data("review " + r.review_id + " references unknown business " + r.business_id);
    }
    c.reviews_by_user_[r.user_id].push_back(i);
    c.reviews_by_business_[r.business_id].push_back(i);
  }
  // reviews_ is sorted by review_id, so the per-key index lists come out
  // already ascending.
  return c;
}

const UserRecord* Corpus::find_user(const std::string& id) const {
  auto it = user_by_id_.find(id);
  return it == user_by_id_.end() ? nullptr : &users_[it->second];
}

const ReviewRecord* Corpus::find_review(const std::string& id) const {
  auto it = review_by_id_.find(id);
  return it == review_by_id_.end() ? nullptr : &reviews_[it->second];
}

const BusinessRecord* Corpus::find_business(const std::string& id) const {
  auto it = business_by_id_.find(id);
  return it == business_by_id_.end() ? nullptr : &businesses_[it->second];
}

std::span<const std::size_t> Corpus::reviews_of_user(const std::string& user_id) const {
  auto it = reviews_by_user_.find(user_id);
  if (it == reviews_by_user_.end()) return {};
  return it->second;
}

std::span<const std::size_t> Corpus::reviews_of_business(const std::string& business_id) const {
  auto it = reviews_by_business_.find(business_id);
  if (it == reviews_by_business_.end()) return {};
  return it->second;
}

std::int64_t total_votes(const UserRecord& u) {
  std::int64_t sum = 0;
  for (const auto& [label, n] : u.vote_counts) sum += n;
  return sum;
}

std::int64_t total_compliments(const UserRecord& u) {
  std::int64_t sum = 0;
  for (const auto& [label, n] : u.compliment_counts) sum += n;
  return sum;
}

}  // namespace reviewguard
