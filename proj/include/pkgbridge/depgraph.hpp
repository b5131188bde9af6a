#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pkgbridge/record.hpp"

namespace pkgbridge {

// Which dependency fields count as hard. Statistics follow Depends+Imports;
// batch ordering adds LinkingTo because unsatisfied link-time deps break
// the build.
struct HardDepFields {
  bool depends = true;
  bool imports = true;
  bool linking_to = false;
};
inline constexpr HardDepFields kStatsFields{true, true, false};
inline constexpr HardDepFields kBuildFields{true, true, true};

// The pseudo-package "R" plus the base packages assumed present in every
// build root; never drawn as edges.
const std::set<std::string>& default_ignore_list();

// Directed hard-dependency graph over a package database.
struct DepGraph {
  std::set<std::string> nodes;
  std::map<std::string, std::set<std::string>> edges;          // node -> in-database hard deps
  std::map<std::string, std::set<std::string>> external_refs;  // node -> deps absent from the database

  const std::set<std::string>& deps_of(const std::string& node) const;
};

DepGraph build_graph(const std::vector<PackageRecord>& db, HardDepFields fields = kBuildFields,
                     const std::set<std::string>& ignore = default_ignore_list());
// throws Error(DuplicatePackage)

struct CompilationStats {
  std::size_t total = 0;
  std::set<std::string> direct;         // NeedsCompilation
  std::set<std::string> indirect_only;  // not direct, but some transitive hard dep is
  double direct_pct = 0.0;
  double indirect_only_pct = 0.0;
  double either_pct = 0.0;  // always direct_pct + indirect_only_pct
};

CompilationStats compilation_stats(const std::vector<PackageRecord>& db,
                                   const std::set<std::string>& ignore = default_ignore_list());

enum class ExclusionKind { MissingUpstreamDep, UnsupportedSysreq, DependsOnExcluded };
const char* exclusion_kind_name(ExclusionKind kind) noexcept;

struct ExclusionReason {
  ExclusionKind kind;
  std::string detail;
  bool operator==(const ExclusionReason&) const = default;
};

using ExclusionMap = std::map<std::string, ExclusionReason>;

// Fixed point of exclusion: seeds plus MissingUpstreamDep for every node
// with external refs, then any node with a hard dep on an excluded node
// becomes DependsOnExcluded naming its lexicographically smallest excluded
// direct dep. Seed reasons are never overwritten; monotone and idempotent.
// Seeds for names outside the graph are ignored.
ExclusionMap propagate_exclusions(const DepGraph& g, const ExclusionMap& base_excluded);

// Dependency cycles: Collapse places all members of a strongly-connected
// component in the same batch; Reject raises CycleDetected listing the
// members of every non-trivial component.
enum class CyclePolicy { Collapse, Reject };

struct BatchPlan {
  std::vector<std::vector<std::string>> batches;  // batch i lives at index i-1; names sorted
  ExclusionMap excluded;
};

// Longest-dependency-path layering of the non-excluded subgraph: batch 1
// holds nodes with no non-excluded hard deps, and each node's batch index
// is 1 + the length of its longest hard-dependency chain. The exclusion
// map is propagated before layering.
BatchPlan batch_plan(const DepGraph& g, const ExclusionMap& excluded,
                     CyclePolicy policy = CyclePolicy::Collapse);

// One "batch<TAB>name" line per package, batches ascending, then one
// "EXCLUDED<TAB>name<TAB>kind<TAB>detail" line per exclusion, names sorted.
std::string render_batch_plan(const BatchPlan& plan);

// Strongly-connected components, emitted dependencies-first (every
// component a member points to is emitted before it). Deterministic for
// equal inputs.
struct SccResult {
  std::vector<std::vector<std::string>> components;  // members sorted
  std::map<std::string, int> component_of;
};
SccResult strongly_connected_components(const std::set<std::string>& nodes,
                                        const std::map<std::string, std::set<std::string>>& adj);

}  // namespace pkgbridge
