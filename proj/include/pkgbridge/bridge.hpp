#pragma once

#include <string>
#include <vector>

#include "pkgbridge/connector.hpp"
#include "pkgbridge/mapping.hpp"
#include "pkgbridge/record.hpp"

namespace pkgbridge {

// A (prefix, transform) hypothesis with how many probe packages it located
// in the backend's catalog.
struct MappingCandidate {
  std::string prefix;
  NameTransform transform = NameTransform::Identity;
  int coverage = 0;
  bool operator==(const MappingCandidate&) const = default;
};

struct DiscoverResult {
  Mapping mapping;                        // the winning candidate
  std::vector<MappingCandidate> ranked;   // best first
};

// Well-known R packages any binary repository worth bridging to will carry.
std::vector<std::string> default_probes();

// Probes drawn from a package index: the n most-depended-upon names, plus
// the defaults.
std::vector<std::string> probes_from_db(const std::vector<PackageRecord>& db, size_t n = 8);

// Works out how the backend names R packages, with no configuration: every
// catalog name ending in a probe (or its lowercase form) proposes a
// (prefix, transform) pair, and the pair locating the most probes wins.
// Ties prefer the longer prefix, then the lexicographically smaller one,
// then the identity transform. Throws Error(NoMappingFound) when nothing
// locates even one probe.
DiscoverResult discover(PackageBackend& backend,
                        const std::vector<std::string>& probes = default_probes());

// Outcome of a bridged operation. Names the backend does not carry are soft
// data — the caller falls back to building those from source.
struct BridgeOutcome {
  std::vector<std::string> affected;   // system names, transaction order
  std::vector<std::string> not_found;  // R names, request order
};

// Translate, skim off what the backend cannot supply, run one transaction
// for the rest. An empty request is a caller bug (InvalidRequest). The
// service and the in-process direct mode both land on these two functions.
BridgeOutcome bridge_install(PackageBackend& backend, const Mapping& m,
                             const std::vector<std::string>& r_names,
                             const ProgressFn& progress = {});
BridgeOutcome bridge_remove(PackageBackend& backend, const Mapping& m,
                            const std::vector<std::string>& r_names,
                            const ProgressFn& progress = {});

}  // namespace pkgbridge
