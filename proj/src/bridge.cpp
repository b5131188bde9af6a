#include "pkgbridge/bridge.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pkgbridge/depgraph.hpp"
#include "pkgbridge/errors.hpp"
#include "pkgbridge/util.hpp"

namespace pkgbridge {

std::vector<std::string> default_probes() { return {"Rcpp", "MASS"}; }

std::vector<std::string> probes_from_db(const std::vector<PackageRecord>& db, size_t n) {
  DepGraph g = build_graph(db, kStatsFields);
  std::map<std::string, size_t> indegree;
  for (const std::string& node : g.nodes) indegree[node] = 0;
  for (const auto& [from, deps] : g.edges)
    for (const std::string& dep : deps)
      if (g.nodes.count(dep)) ++indegree[dep];

  std::vector<std::pair<std::string, size_t>> by_rank(indegree.begin(), indegree.end());
  std::sort(by_rank.begin(), by_rank.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::set<std::string> picked;
  for (size_t i = 0; i < by_rank.size() && i < n; ++i) picked.insert(by_rank[i].first);
  for (const std::string& probe : default_probes()) picked.insert(probe);
  return {picked.begin(), picked.end()};
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct CandidateKey {
  std::string prefix;
  NameTransform transform;
  bool operator<(const CandidateKey& o) const {
    if (prefix != o.prefix) return prefix < o.prefix;
    return transform < o.transform;
  }
};

}  // namespace

DiscoverResult discover(PackageBackend& backend, const std::vector<std::string>& probes) {
  if (probes.empty()) throw Error(Errc::InvalidRequest, "no probe packages given");
  std::map<std::string, std::string> available = backend.list_available();

  std::set<CandidateKey> keys;
  for (const std::string& probe : probes) {
    std::string lower = to_lower(probe);
    for (const auto& [name, version] : available) {
      (void)version;
      if (ends_with(name, probe))
        keys.insert({name.substr(0, name.size() - probe.size()), NameTransform::Identity});
      if (lower != probe && ends_with(name, lower))
        keys.insert({name.substr(0, name.size() - lower.size()), NameTransform::Lowercase});
    }
  }

  std::vector<MappingCandidate> ranked;
  for (const CandidateKey& key : keys) {
    int coverage = 0;
    for (const std::string& probe : probes)
      if (available.count(system_name(probe, key.prefix, key.transform))) ++coverage;
    if (coverage > 0) ranked.push_back({key.prefix, key.transform, coverage});
  }
  if (ranked.empty())
    throw Error(Errc::NoMappingFound,
                "no catalog name matches any probe (" + join(probes, ", ") + ")");

  std::sort(ranked.begin(), ranked.end(), [](const MappingCandidate& a, const MappingCandidate& b) {
    if (a.coverage != b.coverage) return a.coverage > b.coverage;
    if (a.prefix.size() != b.prefix.size()) return a.prefix.size() > b.prefix.size();
    if (a.prefix != b.prefix) return a.prefix < b.prefix;
    return a.transform < b.transform;
  });

  DiscoverResult result;
  result.mapping.prefix = ranked.front().prefix;
  result.mapping.transform = ranked.front().transform;
  result.ranked = std::move(ranked);
  return result;
}

namespace {

// Splits a request into backend names to act on and R names the backend
// cannot supply. Duplicates collapse; order is preserved.
struct Translated {
  std::vector<std::string> system_names;
  std::vector<std::string> not_found;
};

Translated translate_request(PackageBackend& backend, const Mapping& m,
                             const std::vector<std::string>& r_names) {
  if (r_names.empty()) throw Error(Errc::InvalidRequest, "no packages named in request");
  std::map<std::string, std::string> available = backend.list_available();

  Translated out;
  std::set<std::string> seen;
  for (const std::string& r_name : r_names) {
    if (!seen.insert(r_name).second) continue;
    std::optional<std::string> sys = translate(m, r_name);
    if (sys && available.count(*sys))
      out.system_names.push_back(*sys);
    else
      out.not_found.push_back(r_name);
  }
  return out;
}

}  // namespace

BridgeOutcome bridge_install(PackageBackend& backend, const Mapping& m,
                             const std::vector<std::string>& r_names,
                             const ProgressFn& progress) {
  Translated t = translate_request(backend, m, r_names);
  BridgeOutcome outcome;
  outcome.not_found = std::move(t.not_found);
  if (!t.system_names.empty()) outcome.affected = backend.install(t.system_names, progress);
  return outcome;
}

BridgeOutcome bridge_remove(PackageBackend& backend, const Mapping& m,
                            const std::vector<std::string>& r_names,
                            const ProgressFn& progress) {
  Translated t = translate_request(backend, m, r_names);
  BridgeOutcome outcome;
  outcome.not_found = std::move(t.not_found);
  // Full autoremoval: deps pulled in for an R package leave with it.
  if (!t.system_names.empty()) outcome.affected = backend.remove(t.system_names, true, progress);
  return outcome;
}

}  // namespace pkgbridge
