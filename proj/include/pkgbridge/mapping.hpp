#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pkgbridge/names.hpp"

namespace pkgbridge {

// How R package names become system package names: a mechanical rule
// (prefix + transform) refined by administrator overrides. Exclusions beat
// presets beat the rule.
struct Mapping {
  std::string prefix = "R-CRAN-";
  NameTransform transform = NameTransform::Identity;
  std::set<std::string> exclusions;            // R names that never resolve
  std::map<std::string, std::string> presets;  // R name -> pinned system name
  bool operator==(const Mapping&) const = default;
};

// nullopt means the name is administratively excluded; the caller treats it
// like any other not-found package.
std::optional<std::string> translate(const Mapping& m, const std::string& r_name);

// Best-effort inverse, for audit trails and round-trip checks: presets
// reverse exactly, otherwise the prefix is stripped. Lowercase is lossy, so
// the stripped name is matched case-insensitively against `r_candidates`
// (typically the request's names) to recover the original spelling. nullopt
// when the system name cannot have come from this mapping.
std::optional<std::string> reverse_translate(const Mapping& m, const std::string& system_name,
                                             const std::vector<std::string>& r_candidates = {});

// TSV with directives:
//   # prefix: R-CRAN-
//   # transform: identity
//   units<TAB>R-CRAN-units4        (preset)
//   gifski<TAB>EXCLUDE             (exclusion)
Mapping load_mapping(std::string_view text);  // throws Error(MalformedLine)
std::string save_mapping(const Mapping& m);   // normalized; load(save(m)) == m

// Merges overrides into an existing mapping: directives replace the rule,
// lines replace earlier presets/exclusions for the same R name.
void apply_overrides(Mapping& m, std::string_view text);

}  // namespace pkgbridge
