#include "pkgbridge/record.hpp"

#include <cctype>

#include "pkgbridge/errors.hpp"
#include "pkgbridge/util.hpp"

namespace pkgbridge {

const char* relation_name(Relation rel) noexcept {
  switch (rel) {
    case Relation::Ge: return ">=";
    case Relation::Gt: return ">";
    case Relation::Eq: return "==";
    case Relation::Le: return "<=";
    case Relation::Lt: return "<";
  }
  return "?";
}

namespace {

std::optional<Relation> parse_relation(std::string_view tok) {
  if (tok == ">=") return Relation::Ge;
  if (tok == ">") return Relation::Gt;
  if (tok == "==") return Relation::Eq;
  if (tok == "<=") return Relation::Le;
  if (tok == "<") return Relation::Lt;
  return std::nullopt;
}

DepSpec parse_dep_entry(std::string_view entry) {
  DepSpec dep;
  size_t paren = entry.find('(');
  std::string_view name_part = paren == std::string_view::npos ? entry : entry.substr(0, paren);
  dep.name = std::string(trim(name_part));
  if (dep.name.empty())
    throw Error(Errc::BadConstraint, "dependency entry with empty name: \"" + std::string(entry) + "\"");
  for (char c : dep.name)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw Error(Errc::BadConstraint, "whitespace in dependency name: \"" + std::string(entry) + "\"");

  if (paren == std::string_view::npos) return dep;

  size_t close = entry.find(')', paren);
  if (close == std::string_view::npos)
    throw Error(Errc::BadConstraint, "unterminated constraint: \"" + std::string(entry) + "\"");
  if (!is_blank(entry.substr(close + 1)))
    throw Error(Errc::BadConstraint, "trailing text after constraint: \"" + std::string(entry) + "\"");

  std::string_view inside = trim(entry.substr(paren + 1, close - paren - 1));
  size_t sp = inside.find_first_of(" \t");
  std::string_view rel_tok = sp == std::string_view::npos ? inside : inside.substr(0, sp);
  std::string_view ver_tok = sp == std::string_view::npos ? std::string_view() : trim(inside.substr(sp));

  std::optional<Relation> rel = parse_relation(rel_tok);
  if (!rel)
    throw Error(Errc::BadConstraint, "unknown relation in \"" + std::string(entry) + "\"");
  if (ver_tok.empty())
    throw Error(Errc::BadConstraint, "empty constraint version in \"" + std::string(entry) + "\"");
  try {
    dep.constraint = DepSpec::Constraint{*rel, VersionString::parse(ver_tok)};
  } catch (const Error& e) {
    throw Error(Errc::BadConstraint, "bad constraint version in \"" + std::string(entry) + "\": " + e.what());
  }
  return dep;
}

}  // namespace

std::vector<DepSpec> parse_dep_list(std::string_view text) {
  std::vector<DepSpec> deps;
  for (const std::string& entry : split(text, ',')) {
    if (is_blank(entry)) continue;  // tolerate trailing commas
    deps.push_back(parse_dep_entry(entry));
  }
  return deps;
}

PackageRecord parse_record(const Stanza& stanza) {
  PackageRecord rec;
  rec.name = stanza.at("Package");
  if (rec.name.empty()) throw Error(Errc::BadName, "empty Package field");
  for (char c : rec.name)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw Error(Errc::BadName, "whitespace in package name \"" + rec.name + "\"");
  rec.version = VersionString::parse(stanza.at("Version"));

  if (const std::string* v = stanza.find("License")) rec.license = *v;
  if (const std::string* v = stanza.find("Depends")) rec.depends = parse_dep_list(*v);
  if (const std::string* v = stanza.find("Imports")) rec.imports = parse_dep_list(*v);
  if (const std::string* v = stanza.find("LinkingTo")) rec.linking_to = parse_dep_list(*v);
  if (const std::string* v = stanza.find("Suggests")) rec.suggests = parse_dep_list(*v);
  if (const std::string* v = stanza.find("NeedsCompilation")) rec.needs_compilation = (*v == "yes");
  if (const std::string* v = stanza.find("SystemRequirements")) rec.system_requirements = *v;

  for (const auto* list : {&rec.depends, &rec.imports, &rec.linking_to, &rec.suggests})
    for (const DepSpec& d : *list)
      if (d.name == rec.name)
        throw Error(Errc::SelfDependency, "\"" + rec.name + "\" lists itself as a dependency");
  return rec;
}

std::vector<PackageRecord> parse_package_db(std::string_view text) {
  std::vector<PackageRecord> db;
  for (const Stanza& s : parse_dcf(text)) db.push_back(parse_record(s));
  return db;
}

}  // namespace pkgbridge
