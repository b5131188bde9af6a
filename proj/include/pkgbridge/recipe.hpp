#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pkgbridge/names.hpp"
#include "pkgbridge/record.hpp"
#include "pkgbridge/sysreqs.hpp"

namespace pkgbridge {

struct RecipeOptions {
  std::string prefix = "R-CRAN-";
  NameTransform transform = NameTransform::Identity;
  std::string distro = "fedora";
  int release = 1;
  std::string install_prefix = "/usr/local/lib/R/library";
  // Expanded with {{name}} (upstream name) and {{version}} (the version as
  // published, separators untouched — the tarball is named after it).
  std::string source_template = "https://cran.r-project.org/src/contrib/{{name}}_{{version}}.tar.gz";
  std::string base_build = "R-devel";    // always in BuildRequires; "" drops it
  std::string base_runtime = "R-core";   // always in Requires; "" drops it
  const std::set<std::string>* ignore = nullptr;  // nullptr -> default_ignore_list()
};

struct Recipe {
  std::string system_name;    // e.g. R-CRAN-units
  std::string upstream_name;  // e.g. units
  std::string version;        // separators normalized to '.', digits untouched
  int release = 1;
  std::string license;        // verbatim from the record
  std::vector<std::string> build_requires;    // sorted, deduplicated
  std::vector<std::string> runtime_requires;  // sorted, deduplicated
  std::string source_url;
  std::string body;  // rendered template, byte-deterministic
};

// Substitute every {{key}} in the template from the map. Unknown or
// unterminated placeholders are hard errors (UnresolvedPlaceholder) — a
// half-rendered recipe must never reach a build system.
std::string expand_template(std::string_view text,
                            const std::map<std::string, std::string>& values);

// Placeholders available to recipe templates:
//   {{name}} {{upstream}} {{version}} {{release}} {{license}}
//   {{buildrequires}} {{requires}} {{source}} {{prefix}}
std::map<std::string, std::string> recipe_placeholders(const Recipe& r);

// Throws ExcludedPackage when the curated entry excludes the package,
// NeedsCuration when the record declares system requirements the database
// does not know about. `sysreqs` may be null (package has no entry).
Recipe generate_recipe(const PackageRecord& record, const SysreqsEntry* sysreqs,
                       std::string_view template_text, const RecipeOptions& opts = {});

// Writes <dir>/<system_name>.spec, creating `dir` (and parents) if missing;
// leaves the file untouched when the bytes already match, so repeated
// generation never churns timestamps. Returns the path written (or matched).
std::string write_recipe(const Recipe& recipe, const std::string& dir);

}  // namespace pkgbridge
