#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "reviewguard/clustering.hpp"
#include "reviewguard/error.hpp"
#include "reviewguard/rng.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace reviewguard;

namespace {

NormalizationParams identity_params(std::size_t d) {
  NormalizationParams p;
  p.mean.assign(d, 0.0);
  p.stddev.assign(d, 1.0);
  return p;
}

std::vector<std::vector<double>> two_blobs_12() {
  // Two well-separated tight blobs of 6 points each.
  std::vector<std::vector<double>> pts;
  Rng rng(5);
  for (int i = 0; i < 6; ++i) {
    pts.push_back({oracles::normal_draw(rng, 0.0, 0.3), oracles::normal_draw(rng, 0.0, 0.3)});
  }
  for (int i = 0; i < 6; ++i) {
    pts.push_back({oracles::normal_draw(rng, 10.0, 0.3), oracles::normal_draw(rng, 10.0, 0.3)});
  }
  return pts;
}

}  // namespace

TEST_CASE("k=1 gives the coordinate-wise mean and the total scatter") {
  std::vector<std::vector<double>> pts = {{1, 2}, {3, 4}, {5, 0}, {7, 6}};
  Clustering c = kmeans(pts, 1, 99);
  REQUIRE(c.k == 1);
  CHECK(c.centroids[0][0] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(c.centroids[0][1] == doctest::Approx(3.0).epsilon(1e-9));
  // Distortion = sum of squared distances to the mean.
  double expect = 0;
  for (const auto& p : pts) {
    expect += (p[0] - 4) * (p[0] - 4) + (p[1] - 3) * (p[1] - 3);
  }
  CHECK(c.distortion == doctest::Approx(expect).epsilon(1e-12));
  CHECK(c.converged);
}

TEST_CASE("k equal to the number of distinct points zeroes the distortion") {
  std::vector<std::vector<double>> pts = {{0, 0}, {5, 0}, {0, 5}, {5, 5}};
  Clustering c = kmeans(pts, 4, 3);
  CHECK(c.distortion == doctest::Approx(0.0));
  std::set<int> used(c.assignments.begin(), c.assignments.end());
  CHECK(used.size() == 4);
}

TEST_CASE("k larger than the input is an error") {
  std::vector<std::vector<double>> pts = {{0, 0}, {1, 1}};
  CHECK_THROWS_AS(kmeans(pts, 3, 1), Error);
  CHECK_THROWS_AS(kmeans(pts, 0, 1), Error);
}

TEST_CASE("12-point two-blob clustering matches the exhaustive partition oracle") {
  auto pts = two_blobs_12();
  double best = oracles::best_two_partition_distortion(pts);
  Clustering c = kmeans(pts, 2, 17);
  CHECK(c.distortion == doctest::Approx(best).epsilon(1e-9));
  // First six points together, last six together.
  for (int i = 1; i < 6; ++i) CHECK(c.assignments[std::size_t(i)] == c.assignments[0]);
  for (int i = 7; i < 12; ++i) CHECK(c.assignments[std::size_t(i)] == c.assignments[6]);
  CHECK(c.assignments[0] != c.assignments[6]);
}

TEST_CASE("distortion history never increases") {
  Rng rng(31);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 60; ++i) {
    pts.push_back({rng.uniform_real(0, 10), rng.uniform_real(0, 10), rng.uniform_real(0, 10)});
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Clustering c = kmeans(pts, 4, seed);
    for (std::size_t i = 1; i < c.distortion_history.size(); ++i) {
      CHECK(c.distortion_history[i] <= c.distortion_history[i - 1] + 1e-9);
    }
  }
}

TEST_CASE("converged centroids are the means of their members") {
  Rng rng(41);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 50; ++i) {
    pts.push_back({rng.uniform_real(0, 8), rng.uniform_real(0, 8)});
  }
  Clustering c = kmeans(pts, 3, 2);
  REQUIRE(c.converged);
  for (int cluster = 0; cluster < c.k; ++cluster) {
    if (c.cluster_sizes[std::size_t(cluster)] == 0) continue;
    std::vector<double> mean(2, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (c.assignments[i] != cluster) continue;
      for (std::size_t j = 0; j < 2; ++j) mean[j] += pts[i][j];
    }
    for (std::size_t j = 0; j < 2; ++j) {
      mean[j] /= double(c.cluster_sizes[std::size_t(cluster)]);
      CHECK(c.centroids[std::size_t(cluster)][j] == doctest::Approx(mean[j]).epsilon(1e-9));
    }
  }
}

TEST_CASE("lloyd from fixed centroids is invariant to input permutation") {
  auto pts = two_blobs_12();
  std::vector<std::vector<double>> init = {{1, 1}, {9, 9}};
  Clustering a = lloyd(pts, init, 100);

  std::vector<std::vector<double>> reversed(pts.rbegin(), pts.rend());
  Clustering b = lloyd(reversed, init, 100);

  CHECK(a.distortion == doctest::Approx(b.distortion).epsilon(1e-12));
  for (int c = 0; c < 2; ++c) {
    for (int j = 0; j < 2; ++j) {
      CHECK(a.centroids[std::size_t(c)][std::size_t(j)] ==
            doctest::Approx(b.centroids[std::size_t(c)][std::size_t(j)]).epsilon(1e-12));
    }
  }
  // Point i in pts is point n-1-i in reversed.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(a.assignments[i] == b.assignments[pts.size() - 1 - i]);
  }
}

TEST_CASE("degenerate fits are flagged") {
  SUBCASE("identical points, k=1: zero variance") {
    std::vector<std::vector<double>> pts = {{2, 2}, {2, 2}, {2, 2}};
    Clustering c = kmeans(pts, 1, 1);
    BicScore s = bic(c, pts);
    CHECK(s.degenerate);
    CHECK(s.bic == -std::numeric_limits<double>::infinity());
  }
  SUBCASE("as many clusters as points: no variance dof") {
    std::vector<std::vector<double>> pts = {{0, 0}, {5, 5}};
    Clustering c = kmeans(pts, 2, 1);
    BicScore s = bic(c, pts);
    CHECK(s.degenerate);
  }
}

TEST_CASE("likelihood on the unit square matches the hand evaluation") {
  std::vector<std::vector<double>> pts = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  Clustering c = kmeans(pts, 1, 7);
  BicScore s = bic(c, pts);
  REQUIRE(!s.degenerate);
  // Pooled variance: scatter 2.0 over (4 - 1) dof.
  CHECK(s.variance == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  double ll = oracles::log_likelihood_oracle({4}, 2.0 / 3.0, 2.0);
  double bic_val = oracles::bic_oracle({4}, 2.0 / 3.0, 2.0);
  CHECK(s.log_likelihood == doctest::Approx(ll).epsilon(1e-9));
  CHECK(s.bic == doctest::Approx(bic_val).epsilon(1e-9));
  // Frozen value from the scalar formula (natural logs):
  CHECK(s.log_likelihood == doctest::Approx(-3.5538937003860327).epsilon(1e-9));
  CHECK(s.penalty == doctest::Approx(2.0794415416798357).epsilon(1e-12));
}

TEST_CASE("score decomposition and penalty monotonicity") {
  Rng rng(13);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 40; ++i) {
    pts.push_back({rng.uniform_real(0, 4), rng.uniform_real(0, 4)});
  }
  double last_penalty = -1;
  for (int k = 1; k <= 6; ++k) {
    Clustering c = kmeans(pts, k, 5);
    BicScore s = bic(c, pts);
    CHECK(s.bic == doctest::Approx(s.log_likelihood - s.penalty));
    CHECK(s.penalty > last_penalty);
    last_penalty = s.penalty;
  }
}

TEST_CASE("sweep recovers a planted three-cluster structure") {
  Rng rng(8);
  std::vector<std::vector<double>> pts;
  const double centers[3][2] = {{0, 0}, {20, 0}, {0, 20}};
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 30; ++i) {
      pts.push_back({oracles::normal_draw(rng, centers[c][0], 0.5),
                     oracles::normal_draw(rng, centers[c][1], 0.5)});
    }
  }
  SweepResult sweep = sweep_k(pts, 2, 6, 3, 2024);
  CHECK(sweep.best_k == 3);
  CHECK(sweep.scores.size() == 5);
}

TEST_CASE("a single-k sweep is plain clustering plus scoring") {
  auto pts = two_blobs_12();
  SweepResult sweep = sweep_k(pts, 2, 2, 1, 77);
  CHECK(sweep.best_k == 2);
  REQUIRE(sweep.scores.size() == 1);
  BicScore rescored = bic(sweep.best, pts);
  CHECK(sweep.scores[0].bic == doctest::Approx(rescored.bic));
  CHECK(sweep.best.k == 2);
}

TEST_CASE("popular-cluster choice reproduces the reported tables") {
  SUBCASE("four clusters") {
    Clustering c;
    c.k = 4;
    c.centroids = {
        {2008.25, 3.88, 38.73, 390.22, 20946.6, 1437.97, 43021.45, 21382.02},
        {2008.58, 3.84, 38.34, 262.35, 19874.26, 1119.04, 28782.12, 12293.42},
        {2008.89, 3.85, 37.74, 548.76, 30833.41, 1994.20, 75479.22, 19308.48},
        {2012.38, 3.75, 2.86, 1.18, 159.88, 25.35, 83.55, 9.03},
    };
    c.cluster_sizes = {60, 95, 46, 686355};
    CHECK(select_popular_cluster(c, identity_params(8), 2016.0) == 2);
  }
  SUBCASE("three clusters") {
    Clustering c;
    c.k = 3;
    c.centroids = {
        {2008.25, 3.88, 38.73, 390.22, 20946.6, 1437.97, 43021.45, 21382.02},
        {2008.39, 3.74, 2.87, 1.22, 162.61, 25.50, 87.25, 10.73},
        {2008.89, 3.85, 37.74, 548.76, 30833.41, 1994.20, 75479.22, 19308.48},
    };
    c.cluster_sizes = {60, 686450, 46};
    CHECK(select_popular_cluster(c, identity_params(8), 2016.0) == 2);
  }
  SUBCASE("a single cluster selects itself") {
    Clustering c;
    c.k = 1;
    c.centroids = {{2010, 3.5, 1, 2, 3, 4, 5, 6}};
    c.cluster_sizes = {12};
    CHECK(select_popular_cluster(c, identity_params(8), 2016.0) == 0);
  }
}

TEST_CASE("popular membership is stable across k on separated engagement data") {
  // Engagement-style blobs: many ordinary users, few heavy ones.
  Rng rng(3);
  std::vector<std::vector<double>> raw;
  std::vector<std::string> ids;
  for (int i = 0; i < 200; ++i) {
    raw.push_back({rng.uniform_real(2012, 2016), rng.uniform_real(3.0, 3.6),
                   rng.uniform_real(0, 2), rng.uniform_real(0, 5), rng.uniform_real(0, 300),
                   rng.uniform_real(1, 60), rng.uniform_real(0, 200), rng.uniform_real(0, 30)});
    ids.push_back("ord" + std::to_string(i));
  }
  for (int i = 0; i < 10; ++i) {
    raw.push_back({rng.uniform_real(2004, 2005), rng.uniform_real(4.4, 4.6),
                   rng.uniform_real(8, 10), rng.uniform_real(540, 560),
                   rng.uniform_real(30500, 30800), rng.uniform_real(1970, 2030),
                   rng.uniform_real(75300, 75700), rng.uniform_real(19200, 19400)});
    ids.push_back("pop" + std::to_string(i));
  }
  NormalizedVectors norm = zscore_normalize(raw);

  std::vector<std::string> expected;
  for (int i = 0; i < 10; ++i) expected.push_back("pop" + std::to_string(i));
  std::sort(expected.begin(), expected.end());

  for (int k = 3; k <= 4; ++k) {
    Clustering c = kmeans(norm.vectors, k, 11);
    PopularCluster popular = select_popular_cluster(c, norm.params, 2016.0, ids);
    CHECK(popular.member_ids == expected);
  }
}

TEST_CASE("selection through de-normalized centroids matches raw cluster ranking") {
  // The argmax computed from de-normalized centroids must equal the argmax of
  // the popularity score computed directly on raw per-cluster means.
  Rng rng(19);
  std::vector<std::vector<double>> raw;
  for (int i = 0; i < 120; ++i) {
    double heavy = rng.bernoulli(0.1) ? 1.0 : 0.0;
    raw.push_back({rng.uniform_real(2004, 2016), rng.uniform_real(1, 5),
                   heavy * 30 + rng.uniform_real(0, 3), heavy * 500 + rng.uniform_real(0, 10),
                   heavy * 20000 + rng.uniform_real(0, 500), heavy * 1500 + rng.uniform_real(0, 80),
                   heavy * 50000 + rng.uniform_real(0, 300), heavy * 15000 + rng.uniform_real(0, 40)});
  }
  NormalizedVectors norm = zscore_normalize(raw);
  Clustering c = kmeans(norm.vectors, 3, 23);
  int selected = select_popular_cluster(c, norm.params, 2016.0);

  int best_raw = -1;
  double best_score = -1e300;
  for (int cluster = 0; cluster < c.k; ++cluster) {
    if (c.cluster_sizes[std::size_t(cluster)] == 0) continue;
    std::vector<double> mean(8, 0.0);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (c.assignments[i] != cluster) continue;
      for (std::size_t j = 0; j < 8; ++j) mean[j] += raw[i][j];
    }
    for (double& m : mean) m /= double(c.cluster_sizes[std::size_t(cluster)]);
    double score = (2016.0 - mean[0]);
    for (std::size_t j = 1; j < 8; ++j) score += mean[j];
    score /= 8.0;
    if (score > best_score) {
      best_score = score;
      best_raw = cluster;
    }
  }
  CHECK(selected == best_raw);
}

TEST_CASE("business extraction honors the review-count guard and dedups") {
  using namespace testsupport;
  std::vector<ReviewRecord> reviews;
  // Business X: 12 reviews total; business Y: 9 reviews total.
  for (int i = 0; i < 12; ++i) {
    reviews.push_back(review("x" + std::to_string(i), i == 0 ? "pop" : "u" + std::to_string(i),
                             "X", 4, "2015-01-05"));
  }
  for (int i = 0; i < 9; ++i) {
    reviews.push_back(review("y" + std::to_string(i), i == 0 ? "pop" : "u" + std::to_string(i),
                             "Y", 4, "2015-01-06"));
  }
  reviews.push_back(review("x12", "pop2", "X", 5, "2015-01-07"));
  Corpus c = corpus_of_reviews(reviews);

  SUBCASE("empty popular set") {
    CHECK(extract_businesses(std::vector<std::string>{}, c).empty());
  }
  SUBCASE("guard at ten reviews") {
    std::vector<std::string> popular = {"pop"};
    auto out = extract_businesses(popular, c);
    CHECK(out == std::vector<std::string>{"X"});
  }
  SUBCASE("two popular reviewers of the same business yield one entry") {
    std::vector<std::string> popular = {"pop", "pop2"};
    auto out = extract_businesses(popular, c);
    CHECK(out == std::vector<std::string>{"X"});
  }
}

TEST_CASE("business extraction equals the nested-loop transcription") {
  using namespace testsupport;
  Rng rng(21);
  std::vector<ReviewRecord> reviews;
  for (int i = 0; i < 900; ++i) {
    reviews.push_back(review("r" + std::to_string(i), "u" + std::to_string(rng.uniform_int(0, 39)),
                             "b" + std::to_string(rng.uniform_int(0, 29)),
                             int(rng.uniform_int(1, 5)), "2015-06-01"));
  }
  Corpus c = corpus_of_reviews(reviews);
  std::vector<std::string> popular = {"u0", "u7", "u13", "u21", "u39"};
  for (std::int64_t guard : {1, 10, 25, 50}) {
    CHECK(extract_businesses(popular, c, guard) == oracles::extract_oracle(popular, c, guard));
  }
}
