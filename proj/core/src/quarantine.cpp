#include "reviewguard/quarantine.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "reviewguard/error.hpp"

namespace reviewguard {

TrustScore trusted_score(const std::string& business_id,
                         const std::map<std::string, SpamScore>& review_scores,
                         const Corpus& corpus, double s_threshold, bool full_count_denominator) {
  auto idx = corpus.reviews_of_business(business_id);
  if (idx.empty()) throw_data("business has no reviews: " + business_id);

  TrustScore t;
  t.business_id = business_id;
  double basis_sum = 0, all_sum = 0;
  int basis_n = 0;
  for (std::size_t i : idx) {
    const ReviewRecord& r = corpus.reviews()[i];
    all_sum += r.stars;
    auto it = review_scores.find(r.review_id);
    bool deceptive = it != review_scores.end() && it->second.score > s_threshold;
    if (!deceptive) {
      basis_sum += r.stars;
      ++basis_n;
    }
  }
  if (basis_n == 0) {
    t.fallback = true;
    t.t_b = all_sum / double(idx.size());
    t.basis_count = int(idx.size());
  } else {
    t.basis_count = basis_n;
    t.t_b = basis_sum / double(full_count_denominator ? std::int64_t(idx.size()) : basis_n);
  }
  return t;
}

bool is_deceptive_rating(int stars, double t_b, double tolerance) {
  return double(stars) > t_b + tolerance || double(stars) < t_b - tolerance;
}

namespace {

std::map<std::string, int> deceptive_counts(std::span<const std::string> popular,
                                            const std::set<std::string>& spiky,
                                            const std::map<std::string, TrustScore>& trust,
                                            const Corpus& corpus, double tolerance) {
  std::map<std::string, int> counts;
  for (const std::string& user_id : popular) {
    int& count = counts[user_id];
    for (std::size_t i : corpus.reviews_of_user(user_id)) {
      const ReviewRecord& r = corpus.reviews()[i];
      if (!spiky.contains(r.business_id)) continue;
      auto it = trust.find(r.business_id);
      if (it == trust.end()) continue;
      if (is_deceptive_rating(r.stars, it->second.t_b, tolerance)) ++count;
    }
  }
  return counts;
}

}  // namespace

std::vector<QuarantineReport> quarantine_sweep(std::span<const std::string> popular,
                                               const std::set<std::string>& spiky,
                                               const std::map<std::string, TrustScore>& trust,
                                               const Corpus& corpus, int theta_min, int theta_max,
                                               double tolerance, bool strict_exceeds) {
  if (theta_min > theta_max) throw_config("invalid threshold range");
  auto counts = deceptive_counts(popular, spiky, trust, corpus, tolerance);

  std::vector<QuarantineReport> reports;
  reports.reserve(std::size_t(theta_max - theta_min + 1));
  for (int theta = theta_min; theta <= theta_max; ++theta) {
    QuarantineReport rep;
    rep.threshold = theta;
    rep.per_user_deceptive_counts = counts;
    for (const auto& [user_id, count] : counts) {
      if (strict_exceeds ? count > theta : count >= theta) rep.quarantined.push_back(user_id);
    }
    std::sort(rep.quarantined.begin(), rep.quarantined.end());
    rep.percentage = popular.empty() ? 0.0 : double(rep.quarantined.size()) / double(popular.size());
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::int64_t min_fraud_reviews(std::int64_t n, double a, double fake_star) {
  if (n < 1) throw_config("n must be >= 1");
  if (a < 1.0 || a > 5.0) throw_config("a must be in [1,5]");
  if (fake_star <= a + 0.5) {
    throw_config("half-star lift unreachable: fake_star <= a + 0.5");
  }
  // ceil(0.5 n / (fake_star - a - 0.5)), but settled by checking the mean
  // inequality directly so float rounding cannot shift the boundary.
  double estimate = 0.5 * double(n) / (fake_star - a - 0.5);
  std::int64_t m = std::max<std::int64_t>(1, std::int64_t(std::floor(estimate)) - 2);
  auto lifts = [&](std::int64_t fake_n) {
    double mean = (double(n) * a + double(fake_n) * fake_star) / double(n + fake_n);
    return mean >= a + 0.5;
  };
  while (!lifts(m)) ++m;
  return m;
}

std::vector<EvidenceRow> deception_evidence(std::span<const std::string> popular,
                                            const std::set<std::string>& spiky,
                                            const std::map<std::string, TrustScore>& trust,
                                            const Corpus& corpus, double tolerance) {
  std::vector<EvidenceRow> rows;
  for (const std::string& user_id : popular) {
    for (std::size_t i : corpus.reviews_of_user(user_id)) {
      const ReviewRecord& r = corpus.reviews()[i];
      if (!spiky.contains(r.business_id)) continue;
      auto it = trust.find(r.business_id);
      if (it == trust.end()) continue;
      if (!is_deceptive_rating(r.stars, it->second.t_b, tolerance)) continue;
      rows.push_back({user_id, r.business_id, r.review_id, r.stars, it->second.t_b,
                      double(r.stars) - it->second.t_b});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const EvidenceRow& a, const EvidenceRow& b) {
    return std::tie(a.user_id, a.business_id, a.review_id) <
           std::tie(b.user_id, b.business_id, b.review_id);
  });
  return rows;
}

}  // namespace reviewguard
