#include <doctest.h>

#include <cmath>

#include "reviewguard/error.hpp"
#include "reviewguard/rng.hpp"
#include "reviewguard/rsd.hpp"
#include "reviewguard/synthgen.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace reviewguard;
using namespace testsupport;

namespace {

DateWindow window_2015() { return {*parse_date("2015-01-01"), *parse_date("2015-12-31")}; }

// Series with the given positive daily counts on consecutive days.
DailyCountSeries series_of(const std::vector<int>& positive_counts) {
  DailyCountSeries s;
  s.business_id = "b";
  s.window = window_2015();
  Date day = s.window.start;
  for (int n : positive_counts) {
    if (n > 0) s.positive[day] = n;
    day += Date::duration(1);
  }
  return s;
}

}  // namespace

TEST_CASE("daily series tallies by polarity") {
  SUBCASE("three five-star reviews on one day") {
    Corpus c = corpus_of_reviews({review("r1", "u1", "b1", 5, "2015-06-01"),
                                  review("r2", "u2", "b1", 5, "2015-06-01"),
                                  review("r3", "u3", "b1", 5, "2015-06-01")});
    DailyCountSeries s = build_series("b1", c, window_2015());
    CHECK(s.positive.at(*parse_date("2015-06-01")) == 3);
    CHECK(s.negative.empty());
  }
  SUBCASE("a three-star review lands in neither polarity") {
    Corpus c = corpus_of_reviews({review("r1", "u1", "b1", 3, "2015-06-01")});
    DailyCountSeries s = build_series("b1", c, window_2015());
    CHECK(s.positive.empty());
    CHECK(s.negative.empty());
  }
  SUBCASE("reviews outside the window are ignored") {
    Corpus c = corpus_of_reviews({review("r1", "u1", "b1", 5, "2015-06-01"),
                                  review("r2", "u2", "b1", 5, "2016-06-01")});
    DailyCountSeries s = build_series("b1", c, window_2015());
    CHECK(s.positive.size() == 1);
  }
  SUBCASE("unknown business is an error") {
    Corpus c = corpus_of_reviews({review("r1", "u1", "b1", 5, "2015-06-01")});
    CHECK_THROWS_AS(build_series("nope", c, window_2015()), Error);
  }
}

TEST_CASE("series placement conserves the review count") {
  Rng rng(6);
  std::vector<ReviewRecord> reviews;
  long three_star = 0;
  for (int i = 0; i < 200; ++i) {
    int stars = int(rng.uniform_int(1, 5));
    if (stars == 3) ++three_star;
    char date[16];
    std::snprintf(date, sizeof(date), "2015-%02d-%02d", int(rng.uniform_int(1, 12)),
                  int(rng.uniform_int(1, 28)));
    reviews.push_back(review("r" + std::to_string(i), "u" + std::to_string(i % 11), "b1", stars,
                             date));
  }
  Corpus c = corpus_of_reviews(reviews);
  DailyCountSeries s = build_series("b1", c, window_2015());
  long total = 0;
  for (const auto& [d, n] : s.positive) total += n;
  for (const auto& [d, n] : s.negative) total += n;
  CHECK(total + three_star == 200);
}

TEST_CASE("Tukey hinges on the textbook lists") {
  TukeyQuartiles q = quartiles({1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(q.q1 == doctest::Approx(2.5));
  CHECK(q.q2 == doctest::Approx(4.5));
  CHECK(q.q3 == doctest::Approx(6.5));

  TukeyQuartiles single = quartiles({5});
  CHECK(single.q1 == 5);
  CHECK(single.q2 == 5);
  CHECK(single.q3 == 5);

  TukeyQuartiles constant = quartiles({4, 4, 4, 4, 4, 4, 4});
  CHECK(constant.q1 == 4);
  CHECK(constant.q3 == 4);

  CHECK_THROWS_AS(quartiles({}), Error);
}

TEST_CASE("quartiles match the sort-based oracle on random lists") {
  Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> values;
    int n = int(rng.uniform_int(1, 12));
    for (int i = 0; i < n; ++i) values.push_back(double(rng.uniform_int(0, 5)));
    auto got = quartiles(values);
    auto want = oracles::tukey_oracle(values);
    CHECK(got.q1 == want.q1);
    CHECK(got.q2 == want.q2);
    CHECK(got.q3 == want.q3);
  }
}

TEST_CASE("fence arithmetic") {
  // Hinges q1=2, q3=10: lower {2,2,6}, upper {6,10,10}.
  DailyCountSeries s = series_of({2, 2, 6, 10, 10});
  auto f = fences(s, Polarity::Positive);
  REQUIRE(f.has_value());
  CHECK(f->q1 == 2);
  CHECK(f->q3 == 10);
  CHECK(f->iqr == 8);
  CHECK(f->uof == 22);
  CHECK(f->lof == -10);
}

TEST_CASE("too few active days yields no fences") {
  DailyCountSeries s = series_of({1, 2, 3, 4});
  CHECK(!fences(s, Polarity::Positive).has_value());      // default needs 5 active days
  CHECK(fences(s, Polarity::Positive, 4).has_value());    // threshold is configurable
  CHECK(!fences(s, Polarity::Negative, 1).has_value());   // negative side is empty
}

TEST_CASE("a fence of exactly ten splits eleven from ten") {
  // Counts {5,5,6,7,7,11}: hinges q1=5, q3=7, UOF = 7 + 1.5*2 = 10.
  DailyCountSeries spike_series = series_of({5, 5, 6, 7, 7, 11});
  auto f = fences(spike_series, Polarity::Positive);
  REQUIRE(f.has_value());
  CHECK(f->uof == doctest::Approx(10.0));
  auto spikes = detect_spikes(spike_series, f, std::nullopt);
  REQUIRE(spikes.size() == 1);
  CHECK(spikes[0].count == 11);

  // Same construction with an 11th-day count of ten: no spike.
  DailyCountSeries calm_series = series_of({5, 5, 6, 7, 7, 10});
  auto g = fences(calm_series, Polarity::Positive);
  REQUIRE(g.has_value());
  CHECK(g->uof == doctest::Approx(10.0));
  CHECK(detect_spikes(calm_series, g, std::nullopt).empty());
}

TEST_CASE("constant series spike only above the plateau") {
  DailyCountSeries s = series_of({3, 3, 3, 3, 3, 3});
  auto f = fences(s, Polarity::Positive);
  REQUIRE(f.has_value());
  CHECK(f->iqr == 0);
  CHECK(f->uof == 3);
  CHECK(detect_spikes(s, f, std::nullopt).empty());

  DailyCountSeries bumped = series_of({3, 3, 3, 3, 3, 3, 4});
  auto g = fences(bumped, Polarity::Positive);
  auto spikes = detect_spikes(bumped, g, std::nullopt);
  REQUIRE(spikes.size() == 1);
  CHECK(spikes[0].count == 4);
}

TEST_CASE("fences order correctly around the hinges") {
  Rng rng(123);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> counts;
    int days = int(rng.uniform_int(5, 40));
    for (int i = 0; i < days; ++i) counts.push_back(int(rng.uniform_int(1, 30)));
    auto f = fences(series_of(counts), Polarity::Positive);
    REQUIRE(f.has_value());
    CHECK(f->lof <= f->q1);
    CHECK(f->q1 <= f->q2);
    CHECK(f->q2 <= f->q3);
    CHECK(f->q3 <= f->uof);
  }
}

TEST_CASE("spike detection equals the brute-force day scan") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    DailyCountSeries s;
    s.business_id = "b";
    s.window = window_2015();
    int days = int(rng.uniform_int(1, 80));
    for (int i = 0; i < days; ++i) {
      Date d = s.window.start + Date::duration(rng.uniform_int(0, 360));
      if (rng.bernoulli(0.7)) s.positive[d] += int(rng.uniform_int(1, 25));
      if (rng.bernoulli(0.3)) s.negative[d] += int(rng.uniform_int(1, 25));
    }
    auto pos = fences(s, Polarity::Positive);
    auto neg = fences(s, Polarity::Negative);
    auto got = detect_spikes(s, pos, neg);
    auto want = oracles::spikes_oracle(s, pos, neg);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].date == want[i].first);
      CHECK(got[i].polarity == want[i].second);
    }
  }
}

TEST_CASE("raising a quiet day to a spike leaves other days untouched") {
  // The modified day sits above q3 both before and after, so the hinges (and
  // the fences) are unchanged by construction.
  std::vector<int> base = {2, 2, 2, 4, 4, 4, 6, 6, 6, 9};
  DailyCountSeries before = series_of(base);
  auto f_before = fences(before, Polarity::Positive);
  REQUIRE(f_before.has_value());
  CHECK(f_before->uof == doctest::Approx(12.0));
  CHECK(detect_spikes(before, f_before, std::nullopt).empty());

  std::vector<int> boosted = base;
  boosted[9] = 13;
  DailyCountSeries after = series_of(boosted);
  auto f_after = fences(after, Polarity::Positive);
  REQUIRE(f_after.has_value());
  CHECK(f_after->q1 == f_before->q1);
  CHECK(f_after->q3 == f_before->q3);
  auto spikes = detect_spikes(after, f_after, std::nullopt);
  REQUIRE(spikes.size() == 1);
  CHECK(spikes[0].count == 13);
}

TEST_CASE("spiky businesses are exactly the attacked ones in a planted scenario") {
  ScenarioSpec spec;
  spec.seed = 7;
  spec.n_ordinary_users = 150;
  spec.n_popular_users = 4;
  spec.n_spammer_popular_users = 2;
  spec.n_businesses = 12;
  spec.n_attacked_businesses = 5;
  spec.reviews_per_popular_user = 4;
  SyntheticCorpus synth = generate_records(spec);
  Corpus c = Corpus::build(synth.users, synth.reviews, synth.businesses);

  std::vector<std::string> ids;
  for (const auto& b : synth.businesses) ids.push_back(b.business_id);
  SpikyResult result = spiky_businesses(ids, c, spec.window);
  CHECK(result.spiky_ids == synth.truth.attacked_business_ids);
  CHECK(result.considered == 12);
  CHECK(result.spiky == 5);
  CHECK(result.spiky_fraction == doctest::Approx(5.0 / 12.0));
}

TEST_CASE("a multi-year timeline with a concentrated rush spikes inside it") {
  // Thin background activity 2008-2016, heavy positive days only in
  // 2013-2015: every detected spike must land inside that stretch.
  Rng rng(14);
  std::vector<ReviewRecord> reviews;
  int id = 0;
  for (int year = 2008; year <= 2016; ++year) {
    for (int month = 1; month <= 12; month += 2) {
      char date[16];
      std::snprintf(date, sizeof(date), "%04d-%02d-%02d", year, month,
                    int(rng.uniform_int(1, 28)));
      reviews.push_back(review("bg" + std::to_string(id++), "u" + std::to_string(id % 9), "b1",
                               4, date));
    }
  }
  for (int burst = 0; burst < 6; ++burst) {
    char date[16];
    std::snprintf(date, sizeof(date), "%04d-%02d-%02d", int(rng.uniform_int(2013, 2015)),
                  int(rng.uniform_int(1, 12)), int(rng.uniform_int(1, 28)));
    for (int i = 0; i < 9; ++i) {
      reviews.push_back(review("rush" + std::to_string(id++), "u" + std::to_string(id % 9),
                               "b1", 5, date));
    }
  }
  Corpus c = corpus_of_reviews(reviews);
  DateWindow window{*parse_date("2004-01-01"), *parse_date("2016-12-31")};
  DailyCountSeries s = build_series("b1", c, window);
  auto spikes = detect_spikes(s, fences(s, Polarity::Positive), fences(s, Polarity::Negative));
  REQUIRE(!spikes.empty());
  for (const Spike& spike : spikes) {
    CHECK(spike.date >= *parse_date("2013-01-01"));
    CHECK(spike.date <= *parse_date("2015-12-31"));
  }
}

TEST_CASE("no spikes means an empty spiky set") {
  Corpus c = corpus_of_reviews({review("r1", "u1", "b1", 5, "2015-06-01"),
                                review("r2", "u2", "b1", 5, "2015-06-02"),
                                review("r3", "u3", "b1", 5, "2015-06-03"),
                                review("r4", "u4", "b1", 5, "2015-06-04"),
                                review("r5", "u5", "b1", 5, "2015-06-05")});
  std::vector<std::string> ids = {"b1"};
  SpikyResult result = spiky_businesses(ids, c, window_2015());
  CHECK(result.spiky_ids.empty());
  CHECK(result.spiky_fraction == 0.0);
  CHECK(result.skipped_not_enough_data == 0);
}

TEST_CASE("businesses without enough active days are skipped and counted") {
  Corpus c = corpus_of_reviews({review("r1", "u1", "b1", 5, "2015-06-01"),
                                review("r2", "u2", "b1", 1, "2015-06-02")});
  std::vector<std::string> ids = {"b1"};
  SpikyResult result = spiky_businesses(ids, c, window_2015());
  CHECK(result.skipped_not_enough_data == 1);
  CHECK(result.spiky == 0);
}
