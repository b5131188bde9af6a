#include "pkgbridge/version.hpp"

#include <algorithm>

#include "pkgbridge/errors.hpp"
#include "pkgbridge/util.hpp"

namespace pkgbridge {

VersionString VersionString::parse(std::string_view text) {
  if (text.empty()) throw Error(Errc::BadVersion, "empty version string");
  VersionString v;
  v.raw = std::string(text);
  for (const std::string& part : split_any(text, ".-")) {
    if (part.empty())
      throw Error(Errc::BadVersion, "empty component in \"" + v.raw + "\"");
    if (part.size() > 18)
      throw Error(Errc::BadVersion, "oversized component in \"" + v.raw + "\"");
    unsigned long long value = 0;
    for (char c : part) {
      if (c < '0' || c > '9')
        throw Error(Errc::BadVersion, "non-numeric component \"" + part + "\" in \"" + v.raw + "\"");
      value = value * 10 + static_cast<unsigned long long>(c - '0');
    }
    v.components.push_back(value);
  }
  return v;
}

std::string VersionString::canonical() const {
  std::string out;
  for (size_t i = 0; i < components.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(components[i]);
  }
  return out;
}

std::strong_ordering compare_versions(const VersionString& a, const VersionString& b) {
  size_t n = std::max(a.components.size(), b.components.size());
  for (size_t i = 0; i < n; ++i) {
    unsigned long long ca = i < a.components.size() ? a.components[i] : 0;
    unsigned long long cb = i < b.components.size() ? b.components[i] : 0;
    if (ca != cb) return ca < cb ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace pkgbridge
