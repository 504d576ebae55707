#pragma once

#include <filesystem>

#include "reviewguard/corpus.hpp"

namespace reviewguard {

// Compact binary corpus snapshot. Records are written in canonical key order,
// so snapshot(load_snapshot(p)) is byte-identical to the original file. The
// header carries a magic tag and a format version; loading anything else
// (wrong magic, unknown version, truncated payload) raises Error(Data).
void snapshot(const Corpus& corpus, const std::filesystem::path& path);
Corpus load_snapshot(const std::filesystem::path& path);

inline constexpr std::uint32_t kSnapshotVersion = 1;

}  // namespace reviewguard
