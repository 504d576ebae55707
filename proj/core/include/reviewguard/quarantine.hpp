#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "reviewguard/corpus.hpp"
#include "reviewguard/spamscore.hpp"

namespace reviewguard {

// Rating a business can be trusted at: the mean over its reviews whose spam
// score stayed at or below the threshold. Falls back to the mean over all
// reviews when every review was flagged.
struct TrustScore {
  std::string business_id;
  double t_b = 0.0;
  int basis_count = 0;
  bool fallback = false;
};

// When full_count_denominator is set, the non-deceptive star sum is divided
// by the total review count instead of the basis count (compatibility mode;
// can push t_b below 1 on heavily flagged businesses).
TrustScore trusted_score(const std::string& business_id,
                         const std::map<std::string, SpamScore>& review_scores,
                         const Corpus& corpus, double s_threshold,
                         bool full_count_denominator = false);

// A rating is deceptive when it leaves the tolerance band around the trusted
// score: stars > t_b + tolerance or stars < t_b - tolerance (strict).
bool is_deceptive_rating(int stars, double t_b, double tolerance = 0.5);

struct QuarantineReport {
  int threshold = 0;
  std::vector<std::string> quarantined;  // sorted user ids
  std::map<std::string, int> per_user_deceptive_counts;
  double percentage = 0.0;  // |quarantined| / |popular|, in [0,1]
};

// Counts each popular user's deceptive ratings on spiky businesses and emits
// one report per threshold. quarantined iff count >= threshold (or strictly
// greater under strict_exceeds).
std::vector<QuarantineReport> quarantine_sweep(std::span<const std::string> popular,
                                               const std::set<std::string>& spiky,
                                               const std::map<std::string, TrustScore>& trust,
                                               const Corpus& corpus, int theta_min = 3,
                                               int theta_max = 10, double tolerance = 0.5,
                                               bool strict_exceeds = false);

// Smallest number of fake `fake_star` reviews that lifts a business with n
// reliable reviews at mean a by at least half a star. Throws Error(Config)
// when fake_star <= a + 0.5 (the lift is unreachable).
std::int64_t min_fraud_reviews(std::int64_t n, double a, double fake_star = 5.0);

// Audit trail: every deceptive (popular user, spiky business) rating.
struct EvidenceRow {
  std::string user_id;
  std::string business_id;
  std::string review_id;
  int stars = 0;
  double t_b = 0.0;
  double deviation = 0.0;  // stars - t_b
};

std::vector<EvidenceRow> deception_evidence(std::span<const std::string> popular,
                                            const std::set<std::string>& spiky,
                                            const std::map<std::string, TrustScore>& trust,
                                            const Corpus& corpus, double tolerance = 0.5);

}  // namespace reviewguard
