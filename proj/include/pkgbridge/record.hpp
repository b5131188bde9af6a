#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pkgbridge/dcf.hpp"
#include "pkgbridge/version.hpp"

namespace pkgbridge {

enum class Relation { Ge, Gt, Eq, Le, Lt };

const char* relation_name(Relation rel) noexcept;  // ">=", ">", "==", "<=", "<"

// One entry of a dependency field: `name` or `name (rel version)`.
struct DepSpec {
  struct Constraint {
    Relation rel;
    VersionString version;
  };
  std::string name;
  std::optional<Constraint> constraint;
};

// Parsed metadata of one source package (one DESCRIPTION stanza or one
// PACKAGES-index stanza). Name, version and license are kept verbatim.
struct PackageRecord {
  std::string name;
  VersionString version;
  std::string license;
  std::vector<DepSpec> depends;
  std::vector<DepSpec> imports;
  std::vector<DepSpec> linking_to;
  std::vector<DepSpec> suggests;
  bool needs_compilation = false;
  std::string system_requirements;  // verbatim free text; empty = none declared
};

// Splits a comma-separated dependency field. The pseudo-dependency "R" is
// kept like any other name.
std::vector<DepSpec> parse_dep_list(std::string_view text);  // throws Error(BadConstraint)

PackageRecord parse_record(const Stanza& stanza);

// A PACKAGES index: one stanza per package.
std::vector<PackageRecord> parse_package_db(std::string_view text);

}  // namespace pkgbridge
