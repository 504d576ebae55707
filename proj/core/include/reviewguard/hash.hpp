#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace reviewguard {

// Hex-encoded SHA-256, used for run-manifest artifact digests.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace reviewguard
