#include "reviewguard/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <unordered_set>

#include "reviewguard/error.hpp"
#include "reviewguard/rng.hpp"

namespace reviewguard {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double diff = a[j] - b[j];
    sum += diff * diff;
  }
  return sum;
}

int nearest_centroid(std::span<const double> x, const std::vector<std::vector<double>>& centroids,
                     double* out_dist = nullptr) {
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int c = 0; c < int(centroids.size()); ++c) {
    double dist = squared_distance(x, centroids[std::size_t(c)]);
    if (dist < best_dist) {
      best_dist = dist;
      best = c;
    }
  }
  if (out_dist) *out_dist = best_dist;
  return best;
}

std::vector<std::vector<double>> kmeanspp_seed(const std::vector<std::vector<double>>& vectors,
                                               int k, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, {0x6b6d6570ULL});  // "kmep"
  std::size_t n = vectors.size();
  std::vector<std::vector<double>> centroids;
  centroids.reserve(std::size_t(k));
  centroids.push_back(vectors[std::size_t(rng.uniform_int(0, std::int64_t(n) - 1))]);

  std::vector<double> dist(n);
  while (int(centroids.size()) < k) {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double d;
      nearest_centroid(vectors[i], centroids, &d);
      dist[i] = d;
      total += d;
    }
    std::size_t chosen;
    if (total <= 0) {
      // All remaining mass sits on existing centroids; fall back to uniform.
      chosen = std::size_t(rng.uniform_int(0, std::int64_t(n) - 1));
    } else {
      double target = rng.uniform_real(0, total);
      double acc = 0;
      chosen = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += dist[i];
        if (acc >= target) {
          chosen = i;
          break;
        }
      }
    }
    centroids.push_back(vectors[chosen]);
  }
  return centroids;
}

}  // namespace

Clustering lloyd(const std::vector<std::vector<double>>& vectors,
                 std::vector<std::vector<double>> initial_centroids, int max_iters) {
  if (vectors.empty() || initial_centroids.empty()) throw_config("lloyd: empty input");
  if (max_iters < 1) throw_config("lloyd: max_iters must be >= 1");
  std::size_t n = vectors.size();
  std::size_t d = vectors.front().size();
  int k = int(initial_centroids.size());

  Clustering result;
  result.k = k;
  result.centroids = std::move(initial_centroids);
  result.assignments.assign(n, -1);
  result.cluster_sizes.assign(std::size_t(k), 0);

  for (int iter = 0; iter < max_iters; ++iter) {
    // Assignment step.
    bool changed = false;
    double distortion = 0;
    std::fill(result.cluster_sizes.begin(), result.cluster_sizes.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      double dist;
      int c = nearest_centroid(vectors[i], result.centroids, &dist);
      if (c != result.assignments[i]) changed = true;
      result.assignments[i] = c;
      ++result.cluster_sizes[std::size_t(c)];
      distortion += dist;
    }
    result.distortion = distortion;
    result.distortion_history.push_back(distortion);
    result.iterations = iter + 1;
    if (!changed) {
      result.converged = true;
      break;
    }

    // Update step.
    std::vector<std::vector<double>> sums(std::size_t(k), std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      auto& s = sums[std::size_t(result.assignments[i])];
      for (std::size_t j = 0; j < d; ++j) s[j] += vectors[i][j];
    }
    for (int c = 0; c < k; ++c) {
      int size = result.cluster_sizes[std::size_t(c)];
      if (size > 0) {
        for (std::size_t j = 0; j < d; ++j) {
          result.centroids[std::size_t(c)][j] = sums[std::size_t(c)][j] / double(size);
        }
      }
    }

    // Reseed empty clusters at the point farthest from its assigned centroid.
    std::unordered_set<std::size_t> taken;
    for (int c = 0; c < k; ++c) {
      if (result.cluster_sizes[std::size_t(c)] != 0) continue;
      double worst = -1;
      std::size_t worst_i = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (taken.contains(i)) continue;
        double dist =
            squared_distance(vectors[i], result.centroids[std::size_t(result.assignments[i])]);
        if (dist > worst) {
          worst = dist;
          worst_i = i;
        }
      }
      if (worst > 0) {
        result.centroids[std::size_t(c)] = vectors[worst_i];
        taken.insert(worst_i);
      }
    }
  }

  return result;
}

Clustering kmeans(const std::vector<std::vector<double>>& vectors, int k, std::uint64_t seed,
                  int max_iters) {
  if (k < 1) throw_config("k must be >= 1");
  if (vectors.empty() || std::size_t(k) > vectors.size()) {
    throw_config("k (" + std::to_string(k) + ") exceeds number of vectors (" +
                 std::to_string(vectors.size()) + ")");
  }
  for (const auto& v : vectors) {
    for (double x : v) {
      if (!std::isfinite(x)) throw_data("non-finite value in clustering input");
    }
  }
  return lloyd(vectors, kmeanspp_seed(vectors, k, seed), max_iters);
}

BicScore bic(const Clustering& clustering, const std::vector<std::vector<double>>& vectors) {
  BicScore score;
  score.k = clustering.k;
  double n = double(vectors.size());
  double k = double(clustering.k);
  double d = vectors.empty() ? 0.0 : double(vectors.front().size());

  double p = (k - 1) + k * d + 1;  // weights + centroids + shared variance
  score.penalty = (p / 2.0) * std::log(n);

  if (vectors.size() <= std::size_t(clustering.k)) {
    score.degenerate = true;
    score.bic = -std::numeric_limits<double>::infinity();
    return score;
  }

  double sq_sum = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    sq_sum += squared_distance(vectors[i],
                               clustering.centroids[std::size_t(clustering.assignments[i])]);
  }
  score.variance = sq_sum / (n - k);
  if (score.variance <= 0) {
    score.degenerate = true;
    score.bic = -std::numeric_limits<double>::infinity();
    return score;
  }

  double ll = 0;
  for (int c = 0; c < clustering.k; ++c) {
    double nc = double(clustering.cluster_sizes[std::size_t(c)]);
    if (nc <= 0) continue;
    ll += -(nc / 2.0) * std::log(2.0 * std::numbers::pi)
          - (nc * d / 2.0) * std::log(score.variance)
          - (nc - 1.0) / 2.0
          + nc * std::log(nc / n);
  }
  score.log_likelihood = ll;
  score.bic = ll - score.penalty;
  return score;
}

SweepResult sweep_k(const std::vector<std::vector<double>>& vectors, int k_min, int k_max,
                    int restarts, std::uint64_t seed, int max_iters) {
  if (k_min < 1 || k_min > k_max) throw_config("invalid k range");
  if (std::size_t(k_max) > vectors.size()) {
    throw_config("k_max exceeds number of vectors");
  }
  if (restarts < 1) throw_config("restarts must be >= 1");

  SweepResult result;
  double best_bic = -std::numeric_limits<double>::infinity();
  for (int k = k_min; k <= k_max; ++k) {
    Clustering k_best;
    BicScore k_best_score;
    bool have = false;
    for (int r = 0; r < restarts; ++r) {
      Rng derive = Rng::stream(seed, {std::uint64_t(k), std::uint64_t(r)});
      Clustering c = kmeans(vectors, k, derive.next_u64(), max_iters);
      BicScore s = bic(c, vectors);
      if (!have || s.bic > k_best_score.bic ||
          (s.bic == k_best_score.bic && c.distortion < k_best.distortion)) {
        k_best = std::move(c);
        k_best_score = s;
        have = true;
      }
    }
    result.scores.push_back(k_best_score);
    if (k_best_score.bic > best_bic) {
      best_bic = k_best_score.bic;
      result.best = std::move(k_best);
      result.best_k = k;
    }
  }
  if (result.best_k == 0) {
    // Every k degenerate (e.g. all points identical): keep the smallest k.
    result.best = kmeans(vectors, k_min, seed, max_iters);
    result.best_k = k_min;
  }
  return result;
}

int select_popular_cluster(const Clustering& clustering, const NormalizationParams& params,
                           double reference_year) {
  int best = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  double best_fans = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < clustering.k; ++c) {
    if (clustering.cluster_sizes[std::size_t(c)] <= 0) continue;
    std::vector<double> raw = denormalize(clustering.centroids[std::size_t(c)], params);
    // Engagement profile in the fixed user-feature order; earlier joiners
    // rank higher via tenure.
    double tenure = reference_year - raw[0];
    double sum = tenure;
    for (std::size_t j = 1; j < raw.size(); ++j) sum += raw[j];
    double score = sum / double(raw.size());
    double fans = raw[3];
    if (score > best_score || (score == best_score && fans > best_fans)) {
      best = c;
      best_score = score;
      best_fans = fans;
    }
  }
  if (best < 0) throw_internal("no nonempty cluster to select from");
  return best;
}

PopularCluster select_popular_cluster(const Clustering& clustering,
                                      const NormalizationParams& params, double reference_year,
                                      std::span<const std::string> ids_in_vector_order) {
  PopularCluster out;
  out.cluster_index = select_popular_cluster(clustering, params, reference_year);
  for (std::size_t i = 0; i < ids_in_vector_order.size(); ++i) {
    if (clustering.assignments[i] == out.cluster_index) {
      out.member_ids.push_back(ids_in_vector_order[i]);
    }
  }
  std::sort(out.member_ids.begin(), out.member_ids.end());
  return out;
}

std::vector<std::string> extract_businesses(std::span<const std::string> popular,
                                            const Corpus& corpus, std::int64_t min_reviews) {
  std::set<std::string> found;
  for (const std::string& user_id : popular) {
    for (std::size_t i : corpus.reviews_of_user(user_id)) {
      const std::string& business_id = corpus.reviews()[i].business_id;
      if (std::int64_t(corpus.reviews_of_business(business_id).size()) >= min_reviews) {
        found.insert(business_id);
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace reviewguard
