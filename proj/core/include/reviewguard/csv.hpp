#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace reviewguard {

// Minimal RFC-4180-ish CSV support for the report files. Cells containing
// commas, quotes or newlines are quoted; everything is UTF-8 passthrough.
class CsvWriter {
 public:
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
};

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

// Writes via a temp file in the same directory, then renames into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// Fixed-precision decimal formatting, locale-independent ("%.*f" semantics).
std::string format_double(double v, int precision = 6);

}  // namespace reviewguard
