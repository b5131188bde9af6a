#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pkgbridge/depgraph.hpp"
#include "pkgbridge/record.hpp"
#include "pkgbridge/version.hpp"

namespace pkgbridge {

// What the binary repository currently ships for one package.
struct BuiltPackage {
  VersionString version;
  int release = 1;
  bool operator==(const BuiltPackage& o) const {
    return version.raw == o.version.raw && release == o.release;
  }
};

// Snapshot of the binary repository, kept as TSV: name<TAB>version<TAB>release,
// '#' comments. The planner never mutates it; apply_sync_plan returns a new one.
struct RepoState {
  std::map<std::string, BuiltPackage> packages;

  static RepoState load(std::string_view text);  // throws Error(MalformedLine)
  std::string save() const;                      // sorted, normalized
  bool operator==(const RepoState&) const = default;
};

enum class BuildReason { New, Updated, ForcedRebuild };
const char* build_reason_name(BuildReason reason) noexcept;

struct BuildItem {
  std::string name;
  BuildReason reason;
  int batch = 1;  // 1-based, relative to this plan's build set
  bool operator==(const BuildItem&) const = default;
};

struct SyncPlan {
  std::set<std::string> removals;  // archived upstream, or excluded now
  std::vector<BuildItem> builds;   // ordered by (batch, name)
  size_t unchanged = 0;
};

struct SyncOptions {
  // Also rebuild packages whose hard deps get rebuilt, transitively. Off by
  // default: an R-level dependency does not pin the dependent's binary.
  bool rebuild_dependents = false;
  CyclePolicy cycle_policy = CyclePolicy::Collapse;
  const std::set<std::string>* ignore = nullptr;  // nullptr -> default_ignore_list()
};

// Stateless diff of upstream against the repository. Any version difference
// — including a downgrade, which CRAN archives produce — triggers a build.
// Exclusions are propagated over the upstream hard-dep graph before
// planning; excluded packages present in the repo become removals. Batch
// numbers are relative to the build set: batch 1 needs nothing that is not
// already shipped.
SyncPlan plan_sync(const std::vector<PackageRecord>& upstream, const RepoState& repo,
                   const ExclusionMap& excluded, const SyncOptions& opts = {});

// Every non-excluded upstream package as a ForcedRebuild, from an empty
// repository's point of view (bootstrap or ABI break).
SyncPlan plan_mass_rebuild(const std::vector<PackageRecord>& upstream,
                           const ExclusionMap& excluded, const SyncOptions& opts = {});

// Repository state after the plan executes: removals dropped, New builds
// enter at release 1, Updated/ForcedRebuild take the upstream version and
// bump the release. Applying a fresh plan's output yields an empty plan.
RepoState apply_sync_plan(const RepoState& repo, const SyncPlan& plan,
                          const std::vector<PackageRecord>& upstream);

int next_release(const RepoState& repo, const std::string& name);

// "REMOVE<TAB>name" lines sorted, then "BUILD<TAB>batch<TAB>name<TAB>reason"
// lines in build order.
std::string render_sync_plan(const SyncPlan& plan);

}  // namespace pkgbridge
