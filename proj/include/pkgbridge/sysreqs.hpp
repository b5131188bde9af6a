#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pkgbridge {

struct PhaseSets {
  std::set<std::string> build;
  std::set<std::string> run;
  bool operator==(const PhaseSets&) const = default;
};

// Mapping of one R package to its system dependencies, per distribution
// target. An excluded entry carries the curator's reason and never carries
// targets.
struct SysreqsEntry {
  std::string r_package;
  std::map<std::string, PhaseSets> targets;  // distro-id (or "*") -> sets
  std::optional<std::string> excluded;       // unsupported-sysreq detail
  bool operator==(const SysreqsEntry&) const = default;
};

// Hand-curated database, kept as line-oriented TSV so diffs stay
// reviewable. Format, one line per (package, distro):
//   r_package<TAB>distro<TAB>build:a,b<TAB>run:c
//   r_package<TAB>*<TAB>EXCLUDED:reason text
// '#' comments; a "# version: N" directive carries the database version.
struct SysreqsDB {
  std::map<std::string, SysreqsEntry> entries;
  long long version = 0;

  static SysreqsDB load(std::string_view text);  // throws Error(MalformedLine)
  std::string save() const;                      // normalized: sorted, one line per package+distro

  const SysreqsEntry* find(std::string_view r_package) const noexcept;
};

enum class Phase { Build, Run };

struct SysreqsLookup {
  enum class Kind { Found, Excluded, Unknown } kind;
  std::set<std::string> packages;  // Found only
  std::string detail;              // Excluded only
};

// Exact-entry lookup; a "*" target applies to every distro and is unioned
// with the distro-specific sets. Unknown when the package has no entry at
// all — the caller decides what absence means.
SysreqsLookup requires_for(const SysreqsDB& db, const std::string& r_package,
                           const std::string& distro, Phase phase);

// Union of an entry's "*" and distro-specific sets. Empty sets for a distro
// the entry does not cover.
PhaseSets entry_targets(const SysreqsEntry& entry, const std::string& distro);

// Scraper lexicon: ordered rules mapping a case-insensitive glob pattern
// (over whole tokens, '*' wildcard) to per-distro package sets. Same TSV
// shape as the database with the pattern in the first column.
struct Lexicon {
  struct Rule {
    std::string pattern;
    std::map<std::string, PhaseSets> targets;
  };
  std::vector<Rule> rules;  // kept sorted by pattern; first match wins

  static Lexicon load(std::string_view text);
};

struct ScrapeResult {
  std::map<std::string, PhaseSets> matched;  // distro -> union of matched rules
  std::vector<std::string> matched_tokens;   // appearance order, duplicates kept
  std::vector<std::string> unmatched_tokens;
};

// Tokens of a raw SystemRequirements string: comma-separated segments with
// parentheticals removed, version qualifiers (">= 2.0") stripped, and
// whitespace collapsed. A token may contain internal spaces ("GNU make").
std::vector<std::string> tokenize_sysreqs(std::string_view raw);

// Total: every token is either matched by exactly one rule or reported
// unmatched; nothing is dropped.
ScrapeResult scrape(std::string_view raw, const Lexicon& lexicon);

}  // namespace pkgbridge
