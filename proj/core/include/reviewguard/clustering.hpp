#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "reviewguard/corpus.hpp"
#include "reviewguard/features.hpp"

namespace reviewguard {

struct Clustering {
  int k = 0;
  std::vector<std::vector<double>> centroids;  // k x d, normalized space
  std::vector<int> assignments;                // per input vector
  std::vector<int> cluster_sizes;
  double distortion = 0.0;  // total squared distance to assigned centroids
  // Distortion recorded after each assignment step; non-increasing by
  // construction of the Lloyd iteration.
  std::vector<double> distortion_history;
  int iterations = 0;
  bool converged = false;
};

// Model-selection score for one clustering under a spherical-Gaussian
// likelihood with a pooled variance shared across clusters. Parameter count
// p = (k-1) mixture weights + k*d centroid coordinates + 1 variance.
struct BicScore {
  int k = 0;
  double log_likelihood = 0.0;
  double penalty = 0.0;  // (p/2) * ln(n)
  double bic = 0.0;      // log_likelihood - penalty; -inf when degenerate
  double variance = 0.0;
  bool degenerate = false;  // n <= k or zero variance
};

// Lloyd iteration from explicit starting centroids. Ties in the assignment
// step go to the lowest centroid index; clusters that empty out are reseeded
// at the point farthest from its currently assigned centroid.
Clustering lloyd(const std::vector<std::vector<double>>& vectors,
                 std::vector<std::vector<double>> initial_centroids, int max_iters = 100);

// k-means++ seeding from `seed`, then Lloyd. Deterministic in
// (vectors, k, seed). Throws if k < 1 or k > |vectors|.
Clustering kmeans(const std::vector<std::vector<double>>& vectors, int k, std::uint64_t seed,
                  int max_iters = 100);

BicScore bic(const Clustering& clustering, const std::vector<std::vector<double>>& vectors);

struct SweepResult {
  Clustering best;
  int best_k = 0;
  std::vector<BicScore> scores;  // per-k best restart, ascending k
};

// Runs `restarts` seeded k-means per k in [k_min, k_max], keeps each k's
// highest-BIC restart, and returns the overall BIC argmax.
SweepResult sweep_k(const std::vector<std::vector<double>>& vectors, int k_min, int k_max,
                    int restarts, std::uint64_t seed, int max_iters = 100);

// Picks the cluster whose de-normalized centroid has the highest mean over
// the engagement coordinates, with yelping_since replaced by tenure
// (reference_year - yelping_since) so long-standing accounts rank higher.
// Ties: larger fans centroid, then lower index. Empty clusters are ignored.
int select_popular_cluster(const Clustering& clustering, const NormalizationParams& params,
                           double reference_year);

struct PopularCluster {
  int cluster_index = -1;
  std::vector<std::string> member_ids;  // sorted
};

PopularCluster select_popular_cluster(const Clustering& clustering,
                                      const NormalizationParams& params, double reference_year,
                                      std::span<const std::string> ids_in_vector_order);

// Distinct businesses rated by any user in `popular` that have at least
// `min_reviews` reviews in the corpus; sorted by business id.
std::vector<std::string> extract_businesses(std::span<const std::string> popular,
                                            const Corpus& corpus, std::int64_t min_reviews = 10);

}  // namespace reviewguard
