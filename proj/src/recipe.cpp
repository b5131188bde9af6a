#include "pkgbridge/recipe.hpp"

#include <algorithm>
#include <filesystem>

#include "pkgbridge/depgraph.hpp"
#include "pkgbridge/errors.hpp"
#include "pkgbridge/util.hpp"

namespace pkgbridge {

std::string expand_template(std::string_view text,
                            const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    size_t open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, open - pos));
    size_t close = text.find("}}", open + 2);
    if (close == std::string_view::npos)
      throw Error(Errc::UnresolvedPlaceholder, "unterminated '{{' in template");
    std::string key(text.substr(open + 2, close - open - 2));
    auto it = values.find(key);
    if (it == values.end())
      throw Error(Errc::UnresolvedPlaceholder, "unknown placeholder '" + key + "'");
    out += it->second;
    pos = close + 2;
  }
  return out;
}

std::map<std::string, std::string> recipe_placeholders(const Recipe& r) {
  return {
      {"name", r.system_name},
      {"upstream", r.upstream_name},
      {"version", r.version},
      {"release", std::to_string(r.release)},
      {"license", r.license},
      {"buildrequires", join(r.build_requires, " ")},
      {"requires", join(r.runtime_requires, " ")},
      {"source", r.source_url},
      {"prefix", ""},  // filled by generate_recipe from the options
  };
}

namespace {

// RPM reserves '-' for the version/release split; R treats '.' and '-' as
// the same separator, so folding is lossless for ordering.
std::string fold_separators(const std::string& raw) {
  std::string out = raw;
  std::replace(out.begin(), out.end(), '-', '.');
  return out;
}

void collect_names(const std::vector<DepSpec>& deps, const std::set<std::string>& ignore,
                   std::set<std::string>& out) {
  for (const DepSpec& d : deps)
    if (!ignore.count(d.name)) out.insert(d.name);
}

}  // namespace

Recipe generate_recipe(const PackageRecord& record, const SysreqsEntry* sysreqs,
                       std::string_view template_text, const RecipeOptions& opts) {
  if (sysreqs && sysreqs->excluded)
    throw Error(Errc::ExcludedPackage, record.name + ": " + *sysreqs->excluded);
  if (!sysreqs && !record.system_requirements.empty())
    throw Error(Errc::NeedsCuration,
                record.name + ": SystemRequirements not in database: " + record.system_requirements);

  const std::set<std::string>& ignore = opts.ignore ? *opts.ignore : default_ignore_list();

  Recipe r;
  r.system_name = system_name(record.name, opts.prefix, opts.transform);
  r.upstream_name = record.name;
  r.version = fold_separators(record.version.raw);
  r.release = opts.release;
  r.license = record.license;
  r.source_url = expand_template(
      opts.source_template, {{"name", record.name}, {"version", record.version.raw}});

  std::set<std::string> run_names;
  collect_names(record.depends, ignore, run_names);
  collect_names(record.imports, ignore, run_names);
  std::set<std::string> build_names = run_names;
  collect_names(record.linking_to, ignore, build_names);

  std::set<std::string> breq;
  std::set<std::string> rreq;
  if (!opts.base_build.empty()) breq.insert(opts.base_build);
  if (!opts.base_runtime.empty()) rreq.insert(opts.base_runtime);
  for (const std::string& n : build_names)
    breq.insert(system_name(n, opts.prefix, opts.transform));
  for (const std::string& n : run_names)
    rreq.insert(system_name(n, opts.prefix, opts.transform));
  if (sysreqs) {
    PhaseSets sys = entry_targets(*sysreqs, opts.distro);
    breq.insert(sys.build.begin(), sys.build.end());
    rreq.insert(sys.run.begin(), sys.run.end());
  }
  r.build_requires.assign(breq.begin(), breq.end());
  r.runtime_requires.assign(rreq.begin(), rreq.end());

  std::map<std::string, std::string> values = recipe_placeholders(r);
  values["prefix"] = opts.install_prefix;
  r.body = expand_template(template_text, values);
  return r;
}

std::string write_recipe(const Recipe& recipe, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::filesystem::path path = std::filesystem::path(dir) / (recipe.system_name + ".spec");
  if (std::filesystem::exists(path, ec)) {
    std::string existing = slurp_file(path.string());
    if (existing == recipe.body) return path.string();
  }
  write_file(path.string(), recipe.body);
  return path.string();
}

}  // namespace pkgbridge
