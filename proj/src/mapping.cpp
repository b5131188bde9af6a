#include "pkgbridge/mapping.hpp"

#include "pkgbridge/errors.hpp"
#include "pkgbridge/util.hpp"

namespace pkgbridge {

std::optional<std::string> translate(const Mapping& m, const std::string& r_name) {
  if (r_name.empty() || trim(r_name).size() != r_name.size())
    throw Error(Errc::BadName, "bad package name: '" + r_name + "'");
  if (m.exclusions.count(r_name)) return std::nullopt;
  auto it = m.presets.find(r_name);
  if (it != m.presets.end()) return it->second;
  return system_name(r_name, m.prefix, m.transform);
}

std::optional<std::string> reverse_translate(const Mapping& m, const std::string& system_name,
                                             const std::vector<std::string>& r_candidates) {
  for (const auto& [r_name, target] : m.presets)
    if (target == system_name && !m.exclusions.count(r_name)) return r_name;
  if (system_name.size() <= m.prefix.size() ||
      system_name.compare(0, m.prefix.size(), m.prefix) != 0)
    return std::nullopt;
  std::string rest = system_name.substr(m.prefix.size());
  if (m.transform == NameTransform::Lowercase)
    for (const std::string& candidate : r_candidates)
      if (to_lower(candidate) == rest && !m.exclusions.count(candidate)) return candidate;
  if (m.exclusions.count(rest)) return std::nullopt;
  return rest;
}

namespace {

[[noreturn]] void bad_line(size_t lineno, const std::string& what) {
  throw Error(Errc::MalformedLine, "mapping line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

void apply_overrides(Mapping& m, std::string_view text) {
  size_t lineno = 0;
  for (const std::string& line : split_lines(text)) {
    ++lineno;
    std::string_view stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped[0] == '#') {
      if (stripped.rfind("# prefix:", 0) == 0) {
        m.prefix = std::string(trim(stripped.substr(9)));
      } else if (stripped.rfind("# transform:", 0) == 0) {
        std::optional<NameTransform> t = parse_transform(trim(stripped.substr(12)));
        if (!t) bad_line(lineno, "unknown transform");
        m.transform = *t;
      }
      continue;
    }
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 2) bad_line(lineno, "expected r_name<TAB>system_name or r_name<TAB>EXCLUDE");
    std::string r_name(trim(cols[0]));
    std::string target(trim(cols[1]));
    if (r_name.empty()) bad_line(lineno, "empty R package name");
    if (target.empty()) bad_line(lineno, "empty target");
    if (target == "EXCLUDE") {
      m.presets.erase(r_name);
      m.exclusions.insert(std::move(r_name));
    } else {
      m.exclusions.erase(r_name);
      m.presets[std::move(r_name)] = std::move(target);
    }
  }
}

Mapping load_mapping(std::string_view text) {
  Mapping m;
  apply_overrides(m, text);
  return m;
}

std::string save_mapping(const Mapping& m) {
  std::string out = "# prefix: " + m.prefix + "\n# transform: " + transform_name(m.transform) + "\n";
  // One section, sorted by R name overall, so the file diffs cleanly.
  // Exclusion wins when a name is (wrongly) in both sets, same as translate.
  std::map<std::string, std::string> lines;
  for (const auto& [r_name, target] : m.presets) lines.emplace(r_name, target);
  for (const std::string& r_name : m.exclusions) lines[r_name] = "EXCLUDE";
  for (const auto& [r_name, target] : lines) {
    out += r_name;
    out += '\t';
    out += target;
    out += '\n';
  }
  return out;
}

}  // namespace pkgbridge
