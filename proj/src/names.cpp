#include "pkgbridge/names.hpp"

#include "pkgbridge/util.hpp"

namespace pkgbridge {

const char* transform_name(NameTransform t) noexcept {
  switch (t) {
    case NameTransform::Identity:
      return "identity";
    case NameTransform::Lowercase:
      return "lowercase";
  }
  return "identity";
}

std::optional<NameTransform> parse_transform(std::string_view s) noexcept {
  if (s == "identity") return NameTransform::Identity;
  if (s == "lowercase") return NameTransform::Lowercase;
  return std::nullopt;
}

std::string system_name(std::string_view r_name, std::string_view prefix, NameTransform transform) {
  std::string out(prefix);
  if (transform == NameTransform::Lowercase) {
    out += to_lower(r_name);
  } else {
    out.append(r_name.begin(), r_name.end());
  }
  return out;
}

}  // namespace pkgbridge
