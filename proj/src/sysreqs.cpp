#include "pkgbridge/sysreqs.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>

#include "pkgbridge/errors.hpp"
#include "pkgbridge/util.hpp"

namespace pkgbridge {

namespace {

[[noreturn]] void bad_line(size_t lineno, const std::string& why) {
  throw Error(Errc::MalformedLine, "line " + std::to_string(lineno) + ": " + why);
}

// Parses the tag columns of one line into either phase sets or an
// exclusion. Shared by the database and lexicon loaders.
struct TagColumns {
  PhaseSets sets;
  std::optional<std::string> excluded;
};

TagColumns parse_tags(const std::vector<std::string>& cols, size_t first, size_t lineno) {
  TagColumns out;
  for (size_t i = first; i < cols.size(); ++i) {
    std::string_view col = trim(cols[i]);
    if (col.empty()) continue;
    size_t colon = col.find(':');
    if (colon == std::string_view::npos) bad_line(lineno, "expected tag:value column, got \"" + std::string(col) + "\"");
    std::string_view tag = col.substr(0, colon);
    std::string_view rest = col.substr(colon + 1);
    if (tag == "EXCLUDED") {
      out.excluded = std::string(trim(rest));
      continue;
    }
    std::set<std::string>* dest = nullptr;
    if (tag == "build")
      dest = &out.sets.build;
    else if (tag == "run")
      dest = &out.sets.run;
    else
      bad_line(lineno, "unknown tag \"" + std::string(tag) + "\"");
    for (const std::string& item : split(rest, ',')) {
      std::string name(trim(item));
      if (name.empty()) bad_line(lineno, "empty system-package name");
      dest->insert(std::move(name));
    }
  }
  if (out.excluded && (!out.sets.build.empty() || !out.sets.run.empty()))
    bad_line(lineno, "EXCLUDED cannot be combined with build/run sets");
  return out;
}

}  // namespace

const SysreqsEntry* SysreqsDB::find(std::string_view r_package) const noexcept {
  auto it = entries.find(std::string(r_package));
  return it == entries.end() ? nullptr : &it->second;
}

SysreqsDB SysreqsDB::load(std::string_view text) {
  SysreqsDB db;
  size_t lineno = 0;
  for (const std::string& line : split_lines(text)) {
    ++lineno;
    std::string_view stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped[0] == '#') {
      std::string_view body = trim(stripped.substr(1));
      if (body.rfind("version:", 0) == 0) {
        std::string_view num = trim(body.substr(8));
        try {
          db.version = std::stoll(std::string(num));
        } catch (...) {
          bad_line(lineno, "bad version directive");
        }
      }
      continue;
    }
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() < 3) bad_line(lineno, "expected r_package<TAB>distro<TAB>tags...");
    std::string pkg(trim(cols[0]));
    std::string distro(trim(cols[1]));
    if (pkg.empty()) bad_line(lineno, "empty package name");
    if (distro.empty()) bad_line(lineno, "empty distro id");

    TagColumns tags = parse_tags(cols, 2, lineno);
    SysreqsEntry& entry = db.entries[pkg];
    entry.r_package = pkg;
    if (tags.excluded) {
      if (!entry.targets.empty()) bad_line(lineno, "\"" + pkg + "\" has targets and an EXCLUDED line");
      entry.excluded = *tags.excluded;
    } else {
      if (entry.excluded) bad_line(lineno, "\"" + pkg + "\" has targets and an EXCLUDED line");
      PhaseSets& sets = entry.targets[distro];
      sets.build.insert(tags.sets.build.begin(), tags.sets.build.end());
      sets.run.insert(tags.sets.run.begin(), tags.sets.run.end());
    }
  }
  return db;
}

std::string SysreqsDB::save() const {
  std::string out = "# version: " + std::to_string(version) + "\n";
  for (const auto& [pkg, entry] : entries) {
    if (entry.excluded) {
      out += pkg + "\t*\tEXCLUDED:" + *entry.excluded + "\n";
      continue;
    }
    for (const auto& [distro, sets] : entry.targets) {
      out += pkg + "\t" + distro;
      if (!sets.build.empty())
        out += "\tbuild:" + join(std::vector<std::string>(sets.build.begin(), sets.build.end()), ",");
      if (!sets.run.empty())
        out += "\trun:" + join(std::vector<std::string>(sets.run.begin(), sets.run.end()), ",");
      out += "\n";
    }
  }
  return out;
}

SysreqsLookup requires_for(const SysreqsDB& db, const std::string& r_package,
                           const std::string& distro, Phase phase) {
  const SysreqsEntry* entry = db.find(r_package);
  if (!entry) return {SysreqsLookup::Kind::Unknown, {}, {}};
  if (entry->excluded) return {SysreqsLookup::Kind::Excluded, {}, *entry->excluded};

  SysreqsLookup result{SysreqsLookup::Kind::Found, {}, {}};
  auto take = [&](const std::string& key) {
    auto it = entry->targets.find(key);
    if (it == entry->targets.end()) return;
    const std::set<std::string>& src = phase == Phase::Build ? it->second.build : it->second.run;
    result.packages.insert(src.begin(), src.end());
  };
  take(distro);
  take("*");
  return result;
}

PhaseSets entry_targets(const SysreqsEntry& entry, const std::string& distro) {
  PhaseSets out;
  auto take = [&](const std::string& key) {
    auto it = entry.targets.find(key);
    if (it == entry.targets.end()) return;
    out.build.insert(it->second.build.begin(), it->second.build.end());
    out.run.insert(it->second.run.begin(), it->second.run.end());
  };
  take(distro);
  take("*");
  return out;
}

Lexicon Lexicon::load(std::string_view text) {
  Lexicon lex;
  std::map<std::string, std::map<std::string, PhaseSets>> by_pattern;
  size_t lineno = 0;
  for (const std::string& line : split_lines(text)) {
    ++lineno;
    std::string_view stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() < 3) bad_line(lineno, "expected pattern<TAB>distro<TAB>tags...");
    std::string pattern = to_lower(trim(cols[0]));
    std::string distro(trim(cols[1]));
    if (pattern.empty()) bad_line(lineno, "empty pattern");
    if (distro.empty()) bad_line(lineno, "empty distro id");
    TagColumns tags = parse_tags(cols, 2, lineno);
    if (tags.excluded) bad_line(lineno, "EXCLUDED has no meaning in a lexicon");
    PhaseSets& sets = by_pattern[pattern][distro];
    sets.build.insert(tags.sets.build.begin(), tags.sets.build.end());
    sets.run.insert(tags.sets.run.begin(), tags.sets.run.end());
  }
  for (auto& [pattern, targets] : by_pattern)
    lex.rules.push_back({pattern, std::move(targets)});
  return lex;
}

namespace {

// Case-insensitive glob over a whole token; '*' matches any run.
bool glob_match(std::string_view pattern, std::string_view text) {
  size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    char pc = p < pattern.size() ? pattern[p] : '\0';
    if (p < pattern.size() &&
        (std::tolower(static_cast<unsigned char>(pc)) ==
         std::tolower(static_cast<unsigned char>(text[t])))) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pc == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

}  // namespace

std::vector<std::string> tokenize_sysreqs(std::string_view raw) {
  std::vector<std::string> tokens;
  for (const std::string& segment : split(raw, ',')) {
    std::string work = segment;
    // drop parentheticals
    for (size_t open = work.find('('); open != std::string::npos; open = work.find('(')) {
      size_t close = work.find(')', open);
      if (close == std::string::npos) {
        work.erase(open);
        break;
      }
      work.erase(open, close - open + 1);
    }
    // strip version qualifiers: rel-op followed by a version-ish word
    for (const char* rel : {">=", "<=", "==", ">", "<"}) {
      for (size_t pos = work.find(rel); pos != std::string::npos; pos = work.find(rel, pos)) {
        size_t end = pos + std::strlen(rel);
        while (end < work.size() && std::isspace(static_cast<unsigned char>(work[end]))) ++end;
        while (end < work.size() && !std::isspace(static_cast<unsigned char>(work[end]))) ++end;
        work.erase(pos, end - pos);
      }
    }
    // collapse whitespace
    std::string token;
    for (char c : work) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!token.empty() && token.back() != ' ') token += ' ';
      } else {
        token += c;
      }
    }
    while (!token.empty() && token.back() == ' ') token.pop_back();
    if (!token.empty()) tokens.push_back(std::move(token));
  }
  return tokens;
}

ScrapeResult scrape(std::string_view raw, const Lexicon& lexicon) {
  ScrapeResult result;
  for (const std::string& token : tokenize_sysreqs(raw)) {
    const Lexicon::Rule* hit = nullptr;
    for (const Lexicon::Rule& rule : lexicon.rules) {
      if (glob_match(rule.pattern, token)) {
        hit = &rule;
        break;
      }
    }
    if (!hit) {
      result.unmatched_tokens.push_back(token);
      continue;
    }
    result.matched_tokens.push_back(token);
    for (const auto& [distro, sets] : hit->targets) {
      PhaseSets& dest = result.matched[distro];
      dest.build.insert(sets.build.begin(), sets.build.end());
      dest.run.insert(sets.run.begin(), sets.run.end());
    }
  }
  return result;
}

}  // namespace pkgbridge
