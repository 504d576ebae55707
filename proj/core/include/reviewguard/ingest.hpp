#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "reviewguard/corpus.hpp"
#include "reviewguard/dates.hpp"

namespace reviewguard {

// What to do with reviews whose user_id or business_id does not resolve:
// drop them, or fabricate a stub record so the review survives.
enum class LinkRepairPolicy { DropDangling, StubDangling };

struct IngestOptions {
  LinkRepairPolicy policy = LinkRepairPolicy::DropDangling;
  // Per-file abort threshold: if malformed/invalid lines exceed this fraction
  // of the file, the run fails instead of silently shedding input.
  double max_error_rate = 0.01;
  // Reviews dated outside this window are invalid.
  DateWindow window{make_date(2004, 1, 1), make_date(2016, 12, 31)};
};

struct FileStats {
  std::int64_t lines = 0;
  std::int64_t parsed = 0;
  std::int64_t invalid = 0;  // malformed JSON or failed validation
};

struct IngestStats {
  FileStats users;
  FileStats reviews;
  FileStats businesses;
  std::int64_t dangling_dropped = 0;
  std::int64_t stubs_created = 0;
};

struct IngestResult {
  Corpus corpus;
  IngestStats stats;
  std::vector<std::string> line_errors;  // "<file>:<line>: <reason>"
};

// Reads three newline-delimited JSON record files (one object per line, UTF-8,
// Yelp-academic-style field names) and cross-links them into a Corpus.
// Throws Error(Data) on unreadable/empty files, on an error rate above the
// configured limit, or on duplicate keys.
IngestResult parse_corpus(const std::filesystem::path& user_path,
                          const std::filesystem::path& review_path,
                          const std::filesystem::path& business_path,
                          const IngestOptions& options = {});

}  // namespace reviewguard
