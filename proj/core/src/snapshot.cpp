#include "reviewguard/snapshot.hpp"

#include <bit>
#include <cstring>
#include <string_view>

#include "reviewguard/csv.hpp"
#include "reviewguard/error.hpp"

namespace reviewguard {

namespace {

constexpr char kMagic[8] = {'R', 'G', 'S', 'N', 'A', 'P', '\0', '\0'};

// Little-endian length-prefixed encoding; doubles travel as IEEE-754 bits.
class Writer {
 public:
  void u32(std::uint32_t v) { raw(&v, sizeof v); }
  void u64(std::uint64_t v) { raw(&v, sizeof v); }
  void i64(std::int64_t v) { raw(&v, sizeof v); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u64(s.size());
    buf_.append(s.data(), s.size());
  }
  const std::string& str() const { return buf_; }

 private:
  void raw(const void* p, std::size_t n) {
    static_assert(std::endian::native == std::endian::little, "snapshot assumes little-endian");
    buf_.append(static_cast<const char*>(p), n);
  }
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint32_t u32() { std::uint32_t v; raw(&v, sizeof v); return v; }
  std::uint64_t u64() { std::uint64_t v; raw(&v, sizeof v); return v; }
  std::int64_t i64() { std::int64_t v; raw(&v, sizeof v); return v; }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    std::uint64_t n = u64();
    if (n > remaining()) throw_data("snapshot truncated (string length overruns file)");
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void raw(void* p, std::size_t n) {
    if (n > remaining()) throw_data("snapshot truncated");
    std::memcpy(p, data_.data() + pos_, n);
    pos_ += n;
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

void write_counts(Writer& w, const std::map<std::string, std::int64_t>& m) {
  w.u64(m.size());
  for (const auto& [label, n] : m) {
    w.str(label);
    w.i64(n);
  }
}

std::map<std::string, std::int64_t> read_counts(Reader& r) {
  std::map<std::string, std::int64_t> m;
  std::uint64_t n = r.u64();
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string label = r.str();
    m[label] = r.i64();
  }
  return m;
}

// Record counts bounded by the bytes left; a corrupt header cannot force a
// giant allocation before the truncation check would fire.
std::size_t read_record_count(Reader& r) {
  std::uint64_t n = r.u64();
  if (n > r.remaining()) throw_data("snapshot truncated (record count overruns file)");
  return std::size_t(n);
}

}  // namespace

void snapshot(const Corpus& corpus, const std::filesystem::path& path) {
  Writer w;
  w.str(std::string_view(kMagic, sizeof kMagic));
  w.u32(kSnapshotVersion);

  w.u64(corpus.users().size());
  for (const UserRecord& u : corpus.users()) {
    w.str(u.user_id);
    w.i64(u.yelping_since);
    w.f64(u.average_stars);
    w.u64(u.elite_years.size());
    for (int y : u.elite_years) w.i64(y);
    w.i64(u.fan_count);
    w.i64(u.friend_count);
    w.i64(u.review_count);
    write_counts(w, u.vote_counts);
    write_counts(w, u.compliment_counts);
  }

  w.u64(corpus.reviews().size());
  for (const ReviewRecord& r : corpus.reviews()) {
    w.str(r.review_id);
    w.str(r.user_id);
    w.str(r.business_id);
    w.i64(r.stars);
    w.i64(r.date.time_since_epoch().count());
    w.str(r.text);
  }

  w.u64(corpus.businesses().size());
  for (const BusinessRecord& b : corpus.businesses()) {
    w.str(b.business_id);
    w.str(b.name);
    w.f64(b.stars);
    w.i64(b.review_count);
  }

  write_file_atomic(path, w.str());
}

Corpus load_snapshot(const std::filesystem::path& path) {
  std::string bytes = read_file(path);
  Reader r(bytes);

  std::string magic = r.str();
  if (magic != std::string_view(kMagic, sizeof kMagic)) {
    throw_data("not a corpus snapshot: " + path.string());
  }
  std::uint32_t version = r.u32();
  if (version != kSnapshotVersion) {
    throw_data("snapshot format version " + std::to_string(version) + " unsupported (expected " +
               std::to_string(kSnapshotVersion) + "): " + path.string());
  }

  std::vector<UserRecord> users(read_record_count(r));
  for (UserRecord& u : users) {
    u.user_id = r.str();
    u.yelping_since = int(r.i64());
    u.average_stars = r.f64();
    u.elite_years.resize(read_record_count(r));
    for (int& y : u.elite_years) y = int(r.i64());
    u.fan_count = r.i64();
    u.friend_count = r.i64();
    u.review_count = r.i64();
    u.vote_counts = read_counts(r);
    u.compliment_counts = read_counts(r);
  }

  std::vector<ReviewRecord> reviews(read_record_count(r));
  for (ReviewRecord& rec : reviews) {
    rec.review_id = r.str();
    rec.user_id = r.str();
    rec.business_id = r.str();
    rec.stars = int(r.i64());
    rec.date = Date(Date::duration(r.i64()));
    rec.text = r.str();
  }

  std::vector<BusinessRecord> businesses(read_record_count(r));
  for (BusinessRecord& b : businesses) {
    b.business_id = r.str();
    b.name = r.str();
    b.stars = r.f64();
    b.review_count = r.i64();
  }

  if (r.remaining() != 0) throw_data("snapshot has trailing bytes: " + path.string());
  return Corpus::build(std::move(users), std::move(reviews), std::move(businesses));
}

}  // namespace reviewguard
