#include "pkgbridge/syncer.hpp"

#include <algorithm>
#include <deque>

#include "pkgbridge/errors.hpp"
#include "pkgbridge/util.hpp"

namespace pkgbridge {

namespace {

[[noreturn]] void bad_line(size_t lineno, const std::string& what) {
  throw Error(Errc::MalformedLine, "repo state line " + std::to_string(lineno) + ": " + what);
}

int parse_release(std::string_view s, size_t lineno) {
  if (s.empty() || s.size() > 9) bad_line(lineno, "bad release number");
  long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') bad_line(lineno, "bad release number");
    v = v * 10 + (c - '0');
  }
  if (v < 1) bad_line(lineno, "release must be >= 1");
  return static_cast<int>(v);
}

}  // namespace

RepoState RepoState::load(std::string_view text) {
  RepoState state;
  size_t lineno = 0;
  for (const std::string& line : split_lines(text)) {
    ++lineno;
    std::string_view stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3) bad_line(lineno, "expected name<TAB>version<TAB>release");
    std::string name(trim(cols[0]));
    if (name.empty()) bad_line(lineno, "empty package name");
    BuiltPackage built;
    try {
      built.version = VersionString::parse(trim(cols[1]));
    } catch (const Error& e) {
      bad_line(lineno, e.what());
    }
    built.release = parse_release(trim(cols[2]), lineno);
    if (!state.packages.emplace(std::move(name), std::move(built)).second)
      bad_line(lineno, "duplicate package");
  }
  return state;
}

std::string RepoState::save() const {
  std::string out;
  for (const auto& [name, built] : packages) {
    out += name;
    out += '\t';
    out += built.version.raw;
    out += '\t';
    out += std::to_string(built.release);
    out += '\n';
  }
  return out;
}

const char* build_reason_name(BuildReason reason) noexcept {
  switch (reason) {
    case BuildReason::New:
      return "new";
    case BuildReason::Updated:
      return "updated";
    case BuildReason::ForcedRebuild:
      return "forced-rebuild";
  }
  return "new";
}

int next_release(const RepoState& repo, const std::string& name) {
  auto it = repo.packages.find(name);
  return it == repo.packages.end() ? 1 : it->second.release + 1;
}

namespace {

// Assign plan-relative batch numbers to the build set. Dependencies outside
// the set are already shipped and impose no ordering.
void assign_batches(const DepGraph& g, std::map<std::string, BuildReason>& reasons,
                    CyclePolicy policy, SyncPlan& plan) {
  DepGraph sub;
  for (const auto& [name, reason] : reasons) sub.nodes.insert(name);
  for (const std::string& name : sub.nodes) {
    auto eit = g.edges.find(name);
    if (eit == g.edges.end()) continue;
    std::set<std::string> kept;
    for (const std::string& dep : eit->second)
      if (sub.nodes.count(dep)) kept.insert(dep);
    if (!kept.empty()) sub.edges.emplace(name, std::move(kept));
  }
  BatchPlan batches = batch_plan(sub, {}, policy);
  for (size_t i = 0; i < batches.batches.size(); ++i)
    for (const std::string& name : batches.batches[i])
      plan.builds.push_back({name, reasons.at(name), static_cast<int>(i) + 1});
}

}  // namespace

SyncPlan plan_sync(const std::vector<PackageRecord>& upstream, const RepoState& repo,
                   const ExclusionMap& excluded, const SyncOptions& opts) {
  const std::set<std::string>& ignore = opts.ignore ? *opts.ignore : default_ignore_list();
  DepGraph g = build_graph(upstream, kBuildFields, ignore);
  ExclusionMap all_excluded = propagate_exclusions(g, excluded);

  std::map<std::string, const PackageRecord*> by_name;
  for (const PackageRecord& rec : upstream) by_name.emplace(rec.name, &rec);

  SyncPlan plan;
  for (const auto& [name, built] : repo.packages)
    if (!by_name.count(name) || all_excluded.count(name)) plan.removals.insert(name);

  std::map<std::string, BuildReason> reasons;
  size_t live = 0;
  for (const PackageRecord& rec : upstream) {
    if (all_excluded.count(rec.name)) continue;
    ++live;
    auto it = repo.packages.find(rec.name);
    if (it == repo.packages.end()) {
      reasons.emplace(rec.name, BuildReason::New);
    } else if (compare_versions(it->second.version, rec.version) != std::strong_ordering::equal) {
      reasons.emplace(rec.name, BuildReason::Updated);
    }
  }

  if (opts.rebuild_dependents) {
    std::map<std::string, std::set<std::string>> reverse;
    for (const auto& [from, deps] : g.edges) {
      if (all_excluded.count(from)) continue;
      for (const std::string& dep : deps)
        if (!all_excluded.count(dep)) reverse[dep].insert(from);
    }
    std::deque<std::string> queue;
    for (const auto& [name, reason] : reasons)
      if (reason == BuildReason::Updated) queue.push_back(name);
    while (!queue.empty()) {
      std::string name = std::move(queue.front());
      queue.pop_front();
      auto rit = reverse.find(name);
      if (rit == reverse.end()) continue;
      for (const std::string& dependent : rit->second)
        if (reasons.emplace(dependent, BuildReason::ForcedRebuild).second)
          queue.push_back(dependent);
    }
  }

  plan.unchanged = live - reasons.size();
  assign_batches(g, reasons, opts.cycle_policy, plan);
  return plan;
}

SyncPlan plan_mass_rebuild(const std::vector<PackageRecord>& upstream,
                           const ExclusionMap& excluded, const SyncOptions& opts) {
  const std::set<std::string>& ignore = opts.ignore ? *opts.ignore : default_ignore_list();
  DepGraph g = build_graph(upstream, kBuildFields, ignore);
  BatchPlan batches = batch_plan(g, excluded, opts.cycle_policy);

  SyncPlan plan;
  for (size_t i = 0; i < batches.batches.size(); ++i)
    for (const std::string& name : batches.batches[i])
      plan.builds.push_back({name, BuildReason::ForcedRebuild, static_cast<int>(i) + 1});
  return plan;
}

RepoState apply_sync_plan(const RepoState& repo, const SyncPlan& plan,
                          const std::vector<PackageRecord>& upstream) {
  std::map<std::string, const PackageRecord*> by_name;
  for (const PackageRecord& rec : upstream) by_name.emplace(rec.name, &rec);

  RepoState next = repo;
  for (const std::string& name : plan.removals) next.packages.erase(name);
  for (const BuildItem& item : plan.builds) {
    auto it = by_name.find(item.name);
    if (it == by_name.end())
      throw Error(Errc::UnknownPackage, "plan builds '" + item.name + "' which upstream lacks");
    next.packages[item.name] = {it->second->version, next_release(repo, item.name)};
  }
  return next;
}

std::string render_sync_plan(const SyncPlan& plan) {
  std::string out;
  for (const std::string& name : plan.removals) {
    out += "REMOVE\t";
    out += name;
    out += '\n';
  }
  for (const BuildItem& item : plan.builds) {
    out += "BUILD\t";
    out += std::to_string(item.batch);
    out += '\t';
    out += item.name;
    out += '\t';
    out += build_reason_name(item.reason);
    out += '\n';
  }
  return out;
}

}  // namespace pkgbridge
