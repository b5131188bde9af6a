#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace pkgbridge {

// Upstream version string. '.' and '-' are equivalent component separators,
// so "0.6-7" and "0.6.7" denote the same version. Components must be
// non-negative integers; anything else is rejected at parse time.
struct VersionString {
  std::string raw;
  std::vector<unsigned long long> components;

  static VersionString parse(std::string_view text);  // throws Error(BadVersion)

  // Components joined with '.'; orders identically to raw.
  std::string canonical() const;
};

// Componentwise numeric comparison; the shorter component list is padded
// with zeros. Total order.
std::strong_ordering compare_versions(const VersionString& a, const VersionString& b);

// Ordering equality, not raw-string equality: "0.6-7" == "0.6.7".
inline bool operator==(const VersionString& a, const VersionString& b) {
  return compare_versions(a, b) == std::strong_ordering::equal;
}
inline std::strong_ordering operator<=>(const VersionString& a, const VersionString& b) {
  return compare_versions(a, b);
}

}  // namespace pkgbridge
