#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pkgbridge {

// How an R package name maps into a system package name. Identity keeps
// the case (R-CRAN-units); Lowercase folds it (r-cran-units) and is lossy
// in reverse.
enum class NameTransform { Identity, Lowercase };

const char* transform_name(NameTransform t) noexcept;  // "identity" / "lowercase"
std::optional<NameTransform> parse_transform(std::string_view s) noexcept;

std::string system_name(std::string_view r_name, std::string_view prefix, NameTransform transform);

}  // namespace pkgbridge
