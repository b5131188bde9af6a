#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pkgbridge {

std::string_view trim(std::string_view s);
bool is_blank(std::string_view s);
std::string to_lower(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
// Splits on any of the separator characters.
std::vector<std::string> split_any(std::string_view s, std::string_view seps);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Input lines, '\n'-separated; a trailing '\r' per line is dropped.
std::vector<std::string> split_lines(std::string_view text);

std::string slurp_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace pkgbridge
