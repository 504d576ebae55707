#include "reviewguard/synthgen.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "reviewguard/csv.hpp"
#include "reviewguard/error.hpp"
#include "reviewguard/features.hpp"
#include "reviewguard/rng.hpp"
#include "reviewguard/rsd.hpp"

namespace reviewguard {

namespace {

using nlohmann::json;

// Stream ids for deriving per-entity generators from the scenario seed.
enum : std::uint64_t {
  kStreamOrdinaryUser = 1,
  kStreamPopularUser = 2,
  kStreamBusiness = 3,
  kStreamAttackPick = 4,
  kStreamOrganic = 5,
  kStreamFoldIn = 6,
  kStreamCampaign = 7,
};

const std::vector<std::string> kOrganicTexts = {
    "i had a really good time and the staff was friendly",
    "we stopped by on a weekend and the service was quick",
    "my order arrived fast and everything tasted fresh",
    "solid place overall though parking can be tricky",
    "the menu is small but everything we tried was done well",
    "decent value for the price and a relaxed atmosphere",
    "i would come back here with friends",
    "our server was attentive and the food came out hot",
    "nothing fancy but it gets the job done",
    "portions are generous and the coffee is great",
    "a comfortable spot to spend an afternoon",
    "we waited a little longer than expected but it was worth it",
    "my only complaint is the noise level on busy nights",
    "the staff remembered us from last time which was a nice touch",
    "good food at a fair price in a convenient location",
    "i liked the seasonal specials more than the regular menu",
};

const std::vector<std::string> kSpamTexts = {
    "WOW AMAZING PLACE!!! BEST EVER!!!",
    "INCREDIBLE DEAL!!! GO NOW!!!",
    "BEST SERVICE IN TOWN!!! FIVE STARS!!!",
    "ABSOLUTELY PERFECT!!! WOW!!!",
    "TOP QUALITY!!! UNBEATABLE PRICES!!!",
    "AMAZING STAFF!!! LOVE THIS PLACE!!!",
    "UNREAL EXPERIENCE!!! MUST VISIT NOW!!!",
    "FANTASTIC!!! BEST IN THE CITY!!!",
};

std::string padded_id(char prefix, int width, int n) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%c%0*d", prefix, width, n);
  return buf;
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

void validate(const ScenarioSpec& spec) {
  if (spec.n_ordinary_users < 1) throw_config("scenario needs at least 1 ordinary user");
  if (spec.n_popular_users < 0 || spec.n_spammer_popular_users < 0) {
    throw_config("negative user counts");
  }
  if (spec.n_spammer_popular_users > spec.n_popular_users) {
    throw_config("spammer count exceeds popular count");
  }
  if (spec.n_businesses < 1) throw_config("scenario needs at least 1 business");
  if (spec.n_attacked_businesses < 0 || spec.n_attacked_businesses > spec.n_businesses) {
    throw_config("attacked businesses outside [0, n_businesses]");
  }
  if (spec.organic_daily_min < 1 || spec.organic_daily_min > spec.organic_daily_max) {
    throw_config("organic daily count bounds invalid");
  }
  if (spec.organic_active_day_prob <= 0.0 || spec.organic_active_day_prob > 1.0) {
    throw_config("organic_active_day_prob outside (0,1]");
  }
  if (spec.window.start > spec.window.end) throw_config("window start after end");
  if (spec.n_attacked_businesses > 0) {
    if (spec.campaign.duration_days < 1) throw_config("campaign shorter than 1 day");
    if (spec.campaign.star_value < 1 || spec.campaign.star_value > 5) {
      throw_config("campaign star value outside 1..5");
    }
    // Guarantees the planted days clear any fence the organic counts can
    // produce (UOF <= q3 + 1.5*q3 <= 2.5 * daily_max < reviews_per_day).
    if (spec.campaign.reviews_per_day < 3 * spec.organic_daily_max) {
      throw_config("campaign reviews_per_day must be >= 3x organic_daily_max");
    }
    long window_days = days_between(spec.window.start, spec.window.end) + 1;
    if (spec.campaign.duration_days > window_days) {
      throw_config("campaign longer than the date window");
    }
  }
}

UserRecord make_ordinary_user(const ScenarioSpec& spec, int i) {
  Rng rng = Rng::stream(spec.seed, {kStreamOrdinaryUser, std::uint64_t(i)});
  UserRecord u;
  u.user_id = padded_id('u', 5, i);
  u.yelping_since = int(rng.uniform_int(2012, 2016));
  u.average_stars = round2(rng.uniform_real(3.0, 3.6));
  if (rng.bernoulli(0.2)) {
    int years = std::min(int(rng.uniform_int(1, 2)), 2017 - u.yelping_since);
    int first = int(rng.uniform_int(u.yelping_since, 2016 - (years - 1)));
    for (int y = 0; y < years; ++y) u.elite_years.push_back(first + y);
  }
  u.fan_count = rng.uniform_int(0, 5);
  u.friend_count = rng.uniform_int(0, 300);
  u.review_count = rng.uniform_int(1, 60);
  for (const char* label : {"funny", "useful", "cool"}) {
    u.vote_counts[label] = rng.uniform_int(0, 66);
  }
  for (const char* label : {"hot", "more", "profile"}) {
    u.compliment_counts[label] = rng.uniform_int(0, 10);
  }
  return u;
}

UserRecord make_popular_user(const ScenarioSpec& spec, int i) {
  Rng rng = Rng::stream(spec.seed, {kStreamPopularUser, std::uint64_t(i)});
  UserRecord u;
  u.user_id = padded_id('p', 3, i);
  u.yelping_since = int(rng.uniform_int(2004, 2005));
  u.average_stars = round2(rng.uniform_real(4.4, 4.6));
  int elite = int(rng.uniform_int(8, 10));
  for (int y = 0; y < elite; ++y) u.elite_years.push_back(2006 + y);
  u.fan_count = rng.uniform_int(540, 560);
  u.friend_count = rng.uniform_int(30500, 30800);
  u.review_count = rng.uniform_int(1970, 2030);
  std::int64_t votes = rng.uniform_int(75300, 75700);
  u.vote_counts["funny"] = votes / 3;
  u.vote_counts["useful"] = votes / 3;
  u.vote_counts["cool"] = votes - 2 * (votes / 3);
  std::int64_t compliments = rng.uniform_int(19200, 19400);
  u.compliment_counts["hot"] = compliments / 2;
  u.compliment_counts["more"] = compliments - compliments / 2;
  return u;
}

// Organic stars concentrate on 4 with thin 3/5 tails; no 1-2 star mass, so
// the negative series stays empty and spikes can only be planted positives.
int draw_organic_stars(Rng& rng) {
  double r = rng.unit_real();
  if (r < 0.1) return 3;
  if (r < 0.9) return 4;
  return 5;
}

struct SeparationCheck {
  bool ok = true;
  std::string detail;
};

SeparationCheck check_separation(const std::vector<UserRecord>& ordinary,
                                 const std::vector<UserRecord>& popular) {
  SeparationCheck check;
  if (popular.empty()) return check;
  auto feature_matrix = [](const std::vector<UserRecord>& users) {
    std::vector<std::array<double, 8>> m;
    m.reserve(users.size());
    for (const auto& u : users) m.push_back(user_features(u).as_array());
    return m;
  };
  auto ord = feature_matrix(ordinary);
  auto pop = feature_matrix(popular);
  for (std::size_t j = 0; j < 8; ++j) {
    auto stats = [&](const std::vector<std::array<double, 8>>& m) {
      double mean = 0;
      for (const auto& v : m) mean += v[j];
      mean /= double(m.size());
      double ss = 0;
      for (const auto& v : m) ss += (v[j] - mean) * (v[j] - mean);
      return std::pair{mean, ss};
    };
    auto [mo, sso] = stats(ord);
    auto [mp, ssp] = stats(pop);
    double dof = double(ord.size() + pop.size() - 2);
    double pooled = dof > 0 ? std::sqrt((sso + ssp) / dof) : 0.0;
    double gap = std::abs(mp - mo);
    bool separated = pooled > 0 ? gap >= 5.0 * pooled : gap > 0;
    if (!separated) {
      check.ok = false;
      check.detail = std::string("dimension ") + kUserFeatureNames[j] + " gap " +
                     std::to_string(gap) + " < 5 x pooled std " + std::to_string(pooled);
      return check;
    }
  }
  return check;
}

}  // namespace

SyntheticCorpus generate_records(const ScenarioSpec& spec) {
  validate(spec);
  SyntheticCorpus out;

  for (int i = 0; i < spec.n_ordinary_users; ++i) {
    out.users.push_back(make_ordinary_user(spec, i));
  }
  std::vector<UserRecord> popular;
  for (int i = 0; i < spec.n_popular_users; ++i) {
    popular.push_back(make_popular_user(spec, i));
    out.truth.popular_user_ids.push_back(popular.back().user_id);
    if (i < spec.n_spammer_popular_users) {
      out.truth.spammer_user_ids.push_back(popular.back().user_id);
    }
  }

  SeparationCheck separation =
      check_separation(out.users, popular);
  if (!separation.ok) {
    throw_config("popular/ordinary separation below 5 pooled stddev: " + separation.detail);
  }
  out.users.insert(out.users.end(), popular.begin(), popular.end());

  for (int i = 0; i < spec.n_businesses; ++i) {
    BusinessRecord b;
    b.business_id = padded_id('b', 3, i);
    b.name = "Synthetic Venue " + std::to_string(i);
    b.stars = 0;        // filled from generated reviews below
    b.review_count = 0;
    out.businesses.push_back(std::move(b));
  }

  Rng attack_rng = Rng::stream(spec.seed, {kStreamAttackPick});
  for (std::size_t i :
       attack_rng.sample_indices(std::size_t(spec.n_businesses),
                                 std::size_t(spec.n_attacked_businesses))) {
    out.truth.attacked_business_ids.push_back(out.businesses[i].business_id);
  }

  // Organic arrivals, one derived stream per business.
  long window_days = days_between(spec.window.start, spec.window.end) + 1;
  for (int bi = 0; bi < spec.n_businesses; ++bi) {
    Rng rng = Rng::stream(spec.seed, {kStreamOrganic, std::uint64_t(bi)});
    for (long day = 0; day < window_days; ++day) {
      if (!rng.bernoulli(spec.organic_active_day_prob)) continue;
      int count = int(rng.uniform_int(spec.organic_daily_min, spec.organic_daily_max));
      for (int c = 0; c < count; ++c) {
        ReviewRecord r;
        r.user_id = out.users[std::size_t(rng.uniform_int(0, spec.n_ordinary_users - 1))].user_id;
        r.business_id = out.businesses[std::size_t(bi)].business_id;
        r.stars = draw_organic_stars(rng);
        r.date = spec.window.start + Date::duration(day);
        r.text = rng.pick(kOrganicTexts);
        out.reviews.push_back(std::move(r));
      }
    }
  }

  // Honest popular users take over organic slots instead of adding volume, so
  // their activity cannot move any daily count above a fence. Slots are drawn
  // from non-attacked businesses only and pinned to 4 stars: honest populars
  // end up with no ratings at all on spiky businesses, so no quarantine
  // threshold can touch them.
  int honest_from = spec.n_spammer_popular_users;
  std::set<std::string> attacked(out.truth.attacked_business_ids.begin(),
                                 out.truth.attacked_business_ids.end());
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < out.reviews.size(); ++i) {
    if (!attacked.contains(out.reviews[i].business_id)) eligible.push_back(i);
  }
  std::size_t fold_needed =
      std::size_t(std::max(0, spec.n_popular_users - honest_from)) *
      std::size_t(spec.reviews_per_popular_user);
  if (fold_needed > eligible.size()) {
    throw_config("not enough organic reviews on unattacked businesses to host honest popular "
                 "users' activity");
  }
  Rng fold_rng = Rng::stream(spec.seed, {kStreamFoldIn});
  std::vector<std::size_t> slots = fold_rng.sample_indices(eligible.size(), fold_needed);
  std::size_t slot_at = 0;
  for (int pi = honest_from; pi < spec.n_popular_users; ++pi) {
    for (int k = 0; k < spec.reviews_per_popular_user; ++k) {
      ReviewRecord& r = out.reviews[eligible[slots[slot_at++]]];
      r.user_id = popular[std::size_t(pi)].user_id;
      r.stars = 4;
    }
  }

  // Attack campaigns: consecutive days of same-star bursts, authored
  // round-robin by the spammer accounts (or by random ordinary accounts in a
  // spammerless crowd scenario).
  std::int64_t spam_author_counter = 0;
  for (const std::string& business_id : out.truth.attacked_business_ids) {
    auto biz_no = std::uint64_t(std::stoul(business_id.substr(1)));
    Rng rng = Rng::stream(spec.seed, {kStreamCampaign, biz_no});
    long start = rng.uniform_int(0, window_days - spec.campaign.duration_days);
    for (int dayno = 0; dayno < spec.campaign.duration_days; ++dayno) {
      for (int c = 0; c < spec.campaign.reviews_per_day; ++c) {
        ReviewRecord r;
        if (spec.n_spammer_popular_users > 0) {
          r.user_id =
              out.truth.spammer_user_ids[std::size_t(spam_author_counter++) %
                                         out.truth.spammer_user_ids.size()];
        } else {
          r.user_id =
              out.users[std::size_t(rng.uniform_int(0, spec.n_ordinary_users - 1))].user_id;
        }
        r.business_id = business_id;
        r.stars = spec.campaign.star_value;
        r.date = spec.window.start + Date::duration(start + dayno);
        r.text = rng.pick(kSpamTexts);
        out.reviews.push_back(std::move(r));
        out.truth.planted_spam_review_ids.push_back("");  // id assigned below
      }
    }
  }

  // Review ids follow generation order (organic first, then campaigns), which
  // is itself deterministic.
  std::size_t spam_begin = out.reviews.size() - out.truth.planted_spam_review_ids.size();
  for (std::size_t i = 0; i < out.reviews.size(); ++i) {
    out.reviews[i].review_id = padded_id('r', 7, int(i));
    if (i >= spam_begin) {
      out.truth.planted_spam_review_ids[i - spam_begin] = out.reviews[i].review_id;
    }
  }

  // Business metadata mirrors the generated reviews.
  std::map<std::string, std::pair<double, std::int64_t>> biz_stars;
  for (const auto& r : out.reviews) {
    auto& [sum, n] = biz_stars[r.business_id];
    sum += r.stars;
    ++n;
  }
  for (auto& b : out.businesses) {
    auto it = biz_stars.find(b.business_id);
    if (it != biz_stars.end()) {
      b.review_count = it->second.second;
      b.stars = round2(it->second.first / double(it->second.second));
    } else {
      b.stars = 3.0;
    }
  }

  std::sort(out.truth.attacked_business_ids.begin(), out.truth.attacked_business_ids.end());
  std::sort(out.truth.planted_spam_review_ids.begin(), out.truth.planted_spam_review_ids.end());

  // Planted-margin check: the exact spike detection the analysis runs must
  // recover the attacked set, nothing more, nothing less.
  Corpus corpus = Corpus::build(out.users, out.reviews, out.businesses);
  std::vector<std::string> all_ids;
  for (const auto& b : out.businesses) all_ids.push_back(b.business_id);
  SpikyResult rsd = spiky_businesses(all_ids, corpus, spec.window);
  if (rsd.spiky_ids != out.truth.attacked_business_ids) {
    throw_config("generated scenario failed its spike margin check: expected " +
                 std::to_string(out.truth.attacked_business_ids.size()) + " spiky businesses, got " +
                 std::to_string(rsd.spiky_ids.size()));
  }

  return out;
}

namespace {

json user_to_json(const UserRecord& u) {
  json votes = json::object();
  for (const auto& [label, n] : u.vote_counts) votes[label] = n;
  json compliments = json::object();
  for (const auto& [label, n] : u.compliment_counts) compliments[label] = n;
  return json{{"user_id", u.user_id},
              {"yelping_since", u.yelping_since},
              {"average_stars", u.average_stars},
              {"elite", u.elite_years},
              {"fans", u.fan_count},
              {"friends", u.friend_count},
              {"review_count", u.review_count},
              {"votes", votes},
              {"compliments", compliments}};
}

json review_to_json(const ReviewRecord& r) {
  return json{{"review_id", r.review_id}, {"user_id", r.user_id},
              {"business_id", r.business_id}, {"stars", r.stars},
              {"date", format_date(r.date)}, {"text", r.text}};
}

json business_to_json(const BusinessRecord& b) {
  return json{{"business_id", b.business_id},
              {"name", b.name},
              {"stars", b.stars},
              {"review_count", b.review_count}};
}

const std::string& key_of(const UserRecord& u) { return u.user_id; }
const std::string& key_of(const ReviewRecord& r) { return r.review_id; }
const std::string& key_of(const BusinessRecord& b) { return b.business_id; }

template <typename Record, typename ToJson>
void write_ndjson(std::vector<Record> records, const std::filesystem::path& path, ToJson to_json) {
  // Canonical key order on disk, matching corpus iteration order.
  std::sort(records.begin(), records.end(),
            [](const Record& a, const Record& b) { return key_of(a) < key_of(b); });
  std::string out;
  for (const Record& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  write_file_atomic(path, out);
}

}  // namespace

GeneratedFiles generate(const ScenarioSpec& spec, const std::filesystem::path& out_dir) {
  SyntheticCorpus records = generate_records(spec);
  std::filesystem::create_directories(out_dir);

  GeneratedFiles files;
  files.user_path = out_dir / "users.ndjson";
  files.review_path = out_dir / "reviews.ndjson";
  files.business_path = out_dir / "businesses.ndjson";
  files.ground_truth_path = out_dir / "ground_truth.json";
  files.truth = records.truth;

  write_ndjson(std::move(records.users), files.user_path, user_to_json);
  write_ndjson(std::move(records.reviews), files.review_path, review_to_json);
  write_ndjson(std::move(records.businesses), files.business_path, business_to_json);
  write_ground_truth(files.truth, files.ground_truth_path);
  return files;
}

void write_ground_truth(const GroundTruth& truth, const std::filesystem::path& path) {
  json j{{"popular_user_ids", truth.popular_user_ids},
         {"spammer_user_ids", truth.spammer_user_ids},
         {"attacked_business_ids", truth.attacked_business_ids},
         {"planted_spam_review_ids", truth.planted_spam_review_ids}};
  write_file_atomic(path, j.dump(2) + "\n");
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  json j = json::parse(read_file(path));
  GroundTruth t;
  j.at("popular_user_ids").get_to(t.popular_user_ids);
  j.at("spammer_user_ids").get_to(t.spammer_user_ids);
  j.at("attacked_business_ids").get_to(t.attacked_business_ids);
  j.at("planted_spam_review_ids").get_to(t.planted_spam_review_ids);
  return t;
}

}  // namespace reviewguard
