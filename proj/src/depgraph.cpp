#include "pkgbridge/depgraph.hpp"

#include <algorithm>

#include "pkgbridge/errors.hpp"

namespace pkgbridge {

const std::set<std::string>& default_ignore_list() {
  static const std::set<std::string> ignore = {
      "R",        "base",   "compiler", "datasets", "grDevices", "graphics",
      "grid",     "methods", "parallel", "splines",  "stats",     "stats4",
      "tcltk",    "tools",  "translations", "utils",
  };
  return ignore;
}

const std::set<std::string>& DepGraph::deps_of(const std::string& node) const {
  static const std::set<std::string> empty;
  auto it = edges.find(node);
  return it == edges.end() ? empty : it->second;
}

DepGraph build_graph(const std::vector<PackageRecord>& db, HardDepFields fields,
                     const std::set<std::string>& ignore) {
  DepGraph g;
  for (const PackageRecord& rec : db) {
    if (!g.nodes.insert(rec.name).second)
      throw Error(Errc::DuplicatePackage, "\"" + rec.name + "\" appears twice in the database");
  }
  for (const PackageRecord& rec : db) {
    std::set<std::string>& deps = g.edges[rec.name];
    std::set<std::string>& ext = g.external_refs[rec.name];
    auto add = [&](const std::vector<DepSpec>& list) {
      for (const DepSpec& d : list) {
        if (d.name == rec.name || ignore.count(d.name)) continue;
        if (g.nodes.count(d.name))
          deps.insert(d.name);
        else
          ext.insert(d.name);
      }
    };
    if (fields.depends) add(rec.depends);
    if (fields.imports) add(rec.imports);
    if (fields.linking_to) add(rec.linking_to);
    if (ext.empty()) g.external_refs.erase(rec.name);
    if (deps.empty()) g.edges.erase(rec.name);
  }
  return g;
}

SccResult strongly_connected_components(const std::set<std::string>& nodes,
                                        const std::map<std::string, std::set<std::string>>& adj) {
  // Iterative Tarjan; components come out dependencies-first.
  SccResult result;
  std::map<std::string, int> index, lowlink;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  int next_index = 0;

  static const std::set<std::string> no_deps;
  auto neighbors = [&](const std::string& n) -> const std::set<std::string>& {
    auto it = adj.find(n);
    return it == adj.end() ? no_deps : it->second;
  };

  struct Frame {
    const std::string* node;
    std::set<std::string>::const_iterator next, end;
  };

  for (const std::string& root : nodes) {
    if (index.count(root)) continue;
    std::vector<Frame> frames;
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack.insert(root);
    const std::set<std::string>& root_nb = neighbors(root);
    frames.push_back({&root, root_nb.begin(), root_nb.end()});

    while (!frames.empty()) {
      Frame& f = frames.back();
      const std::string& v = *f.node;
      bool descended = false;
      while (f.next != f.end) {
        const std::string& w = *f.next++;
        if (!nodes.count(w)) continue;
        if (!index.count(w)) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack.insert(w);
          const std::set<std::string>& nb = neighbors(w);
          // node pointers reference the stable set elements
          frames.push_back({&*nodes.find(w), nb.begin(), nb.end()});
          descended = true;
          break;
        }
        if (on_stack.count(w)) lowlink[v] = std::min(lowlink[v], index[w]);
      }
      if (descended) continue;
      if (lowlink[v] == index[v]) {
        std::vector<std::string> comp;
        while (true) {
          std::string w = stack.back();
          stack.pop_back();
          on_stack.erase(w);
          comp.push_back(w);
          if (w == v) break;
        }
        std::sort(comp.begin(), comp.end());
        int id = static_cast<int>(result.components.size());
        for (const std::string& m : comp) result.component_of[m] = id;
        result.components.push_back(std::move(comp));
      }
      frames.pop_back();
      if (!frames.empty()) {
        Frame& parent = frames.back();
        lowlink[*parent.node] = std::min(lowlink[*parent.node], lowlink[v]);
      }
    }
  }
  return result;
}

CompilationStats compilation_stats(const std::vector<PackageRecord>& db,
                                   const std::set<std::string>& ignore) {
  DepGraph g = build_graph(db, kStatsFields, ignore);
  CompilationStats stats;
  stats.total = db.size();

  std::set<std::string> direct;
  for (const PackageRecord& rec : db)
    if (rec.needs_compilation) direct.insert(rec.name);

  // Propagate "reaches compiled code" over the condensation; components are
  // emitted dependencies-first, so every dep component is resolved already.
  SccResult scc = strongly_connected_components(g.nodes, g.edges);
  std::vector<char> reaches(scc.components.size(), 0);
  for (size_t i = 0; i < scc.components.size(); ++i) {
    bool r = false;
    for (const std::string& m : scc.components[i]) {
      if (direct.count(m)) r = true;
      for (const std::string& dep : g.deps_of(m)) {
        int di = scc.component_of.at(dep);
        if (static_cast<size_t>(di) != i && reaches[di]) r = true;
      }
    }
    reaches[i] = r ? 1 : 0;
  }

  for (const PackageRecord& rec : db) {
    if (direct.count(rec.name)) {
      stats.direct.insert(rec.name);
      continue;
    }
    bool indirect = false;
    for (const std::string& dep : g.deps_of(rec.name))
      if (reaches[scc.component_of.at(dep)]) indirect = true;
    if (indirect) stats.indirect_only.insert(rec.name);
  }

  if (stats.total > 0) {
    stats.direct_pct = 100.0 * static_cast<double>(stats.direct.size()) / static_cast<double>(stats.total);
    stats.indirect_only_pct =
        100.0 * static_cast<double>(stats.indirect_only.size()) / static_cast<double>(stats.total);
  }
  stats.either_pct = stats.direct_pct + stats.indirect_only_pct;
  return stats;
}

const char* exclusion_kind_name(ExclusionKind kind) noexcept {
  switch (kind) {
    case ExclusionKind::MissingUpstreamDep: return "MissingUpstreamDep";
    case ExclusionKind::UnsupportedSysreq: return "UnsupportedSysreq";
    case ExclusionKind::DependsOnExcluded: return "DependsOnExcluded";
  }
  return "?";
}

ExclusionMap propagate_exclusions(const DepGraph& g, const ExclusionMap& base_excluded) {
  ExclusionMap excluded;
  for (const auto& [name, reason] : base_excluded)
    if (g.nodes.count(name)) excluded.emplace(name, reason);
  for (const auto& [name, refs] : g.external_refs) {
    if (excluded.count(name) || refs.empty()) continue;
    excluded.emplace(name, ExclusionReason{ExclusionKind::MissingUpstreamDep, *refs.begin()});
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (const std::string& node : g.nodes) {
      if (excluded.count(node)) continue;
      const std::string* hit = nullptr;
      for (const std::string& dep : g.deps_of(node))
        if (excluded.count(dep) && (hit == nullptr || dep < *hit)) hit = &dep;
      if (hit) {
        excluded.emplace(node, ExclusionReason{ExclusionKind::DependsOnExcluded, *hit});
        changed = true;
      }
    }
  }
  return excluded;
}

BatchPlan batch_plan(const DepGraph& g, const ExclusionMap& excluded, CyclePolicy policy) {
  BatchPlan plan;
  plan.excluded = propagate_exclusions(g, excluded);

  std::set<std::string> live;
  for (const std::string& n : g.nodes)
    if (!plan.excluded.count(n)) live.insert(n);

  std::map<std::string, std::set<std::string>> adj;
  for (const std::string& n : live) {
    for (const std::string& dep : g.deps_of(n))
      if (live.count(dep)) adj[n].insert(dep);
  }

  SccResult scc = strongly_connected_components(live, adj);

  if (policy == CyclePolicy::Reject) {
    std::vector<std::string> members;
    for (const auto& comp : scc.components) {
      bool cyclic = comp.size() > 1 ||
                    (adj.count(comp[0]) && adj.at(comp[0]).count(comp[0]));
      if (cyclic) members.insert(members.end(), comp.begin(), comp.end());
    }
    if (!members.empty()) {
      std::sort(members.begin(), members.end());
      throw Error(Errc::CycleDetected, "dependency cycle: " + [&] {
        std::string s;
        for (size_t i = 0; i < members.size(); ++i) s += (i ? ", " : "") + members[i];
        return s;
      }(), members);
    }
  }

  // Depth over the condensation; intra-component edges are ignored.
  std::vector<int> depth(scc.components.size(), 1);
  for (size_t i = 0; i < scc.components.size(); ++i) {
    int d = 1;
    for (const std::string& m : scc.components[i]) {
      auto it = adj.find(m);
      if (it == adj.end()) continue;
      for (const std::string& dep : it->second) {
        int di = scc.component_of.at(dep);
        if (static_cast<size_t>(di) != i) d = std::max(d, depth[di] + 1);
      }
    }
    depth[i] = d;
  }

  int max_depth = 0;
  for (size_t i = 0; i < scc.components.size(); ++i) max_depth = std::max(max_depth, depth[i]);
  plan.batches.assign(static_cast<size_t>(max_depth), {});
  for (size_t i = 0; i < scc.components.size(); ++i) {
    std::vector<std::string>& batch = plan.batches[static_cast<size_t>(depth[i]) - 1];
    batch.insert(batch.end(), scc.components[i].begin(), scc.components[i].end());
  }
  for (std::vector<std::string>& batch : plan.batches) std::sort(batch.begin(), batch.end());
  return plan;
}

std::string render_batch_plan(const BatchPlan& plan) {
  std::string out;
  for (size_t i = 0; i < plan.batches.size(); ++i)
    for (const std::string& name : plan.batches[i]) {
      out += std::to_string(i + 1);
      out += '\t';
      out += name;
      out += '\n';
    }
  for (const auto& [name, reason] : plan.excluded) {
    out += "EXCLUDED\t";
    out += name;
    out += '\t';
    out += exclusion_kind_name(reason.kind);
    out += '\t';
    out += reason.detail;
    out += '\n';
  }
  return out;
}

}  // namespace pkgbridge
