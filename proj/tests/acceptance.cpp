// Acceptance gate: end-to-end checks of the whole pipeline, one line of
// output per criterion. Run with no arguments; pass --snapshot FILE (or set
// PKGBRIDGE_SNAPSHOT) to additionally sanity-check compilation statistics
// against a real package index snapshot. Exits nonzero if anything fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "helpers.hpp"
#include "pkgbridge/bridge.hpp"
#include "pkgbridge/client.hpp"
#include "pkgbridge/dcf.hpp"
#include "pkgbridge/depgraph.hpp"
#include "pkgbridge/errors.hpp"
#include "pkgbridge/fakepm.hpp"
#include "pkgbridge/mapping.hpp"
#include "pkgbridge/recipe.hpp"
#include "pkgbridge/record.hpp"
#include "pkgbridge/service.hpp"
#include "pkgbridge/syncer.hpp"
#include "pkgbridge/sysreqs.hpp"
#include "pkgbridge/util.hpp"
#include "pkgbridge/version.hpp"

namespace {

using namespace pkgbridge;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

std::string snapshot_path;  // optional CRAN-scale index for the stats band check

// ---------------------------------------------------------------------------
// shared generators
// ---------------------------------------------------------------------------

std::string random_version_text(std::mt19937& rng, std::vector<unsigned long long>* comps_out) {
  size_t n = 1 + rng() % 4;
  std::string text;
  for (size_t i = 0; i < n; ++i) {
    unsigned long long comp = rng() % 1000;
    if (comps_out) comps_out->push_back(comp);
    if (i) text += (rng() % 2) ? '.' : '-';
    text += std::to_string(comp);
  }
  return text;
}

// A small backend world: a catalog whose R packages follow the R-CRAN-
// prefix convention, some bare system libraries, and the pool of R names
// requests draw from (carried or not).
struct World {
  Catalog catalog;
  Mapping mapping;
  std::vector<std::string> r_pool;
};

World make_world(std::mt19937& rng) {
  static const char* kRNames[] = {"alpha", "bravo", "charlie", "delta",
                                  "echo",  "foxtrot", "golf",  "hotel"};
  static const char* kLibs[] = {"libone", "libtwo", "zlibx"};
  World w;
  std::vector<std::string> members;  // creation order; deps point backwards
  for (const char* lib : kLibs) {
    if (rng() % 2) {
      w.catalog.entries[lib] = {"1.0", {}};
      members.push_back(lib);
    }
  }
  for (const char* name : kRNames) {
    w.r_pool.push_back(name);
    if (rng() % 4 == 0) continue;  // not carried: resolves to not_found
    Catalog::Entry entry;
    entry.version = std::to_string(1 + rng() % 3) + "." + std::to_string(rng() % 10);
    for (const std::string& dep : members)
      if (rng() % 3 == 0) entry.depends.insert(dep);
    w.catalog.entries["R-CRAN-" + std::string(name)] = std::move(entry);
    members.push_back("R-CRAN-" + std::string(name));
  }
  return w;
}

std::vector<std::string> pick_names(std::mt19937& rng, const std::vector<std::string>& pool) {
  std::vector<std::string> names;
  size_t n = 1 + rng() % 3;
  for (size_t i = 0; i < n; ++i) names.push_back(pool[rng() % pool.size()]);
  return names;
}

// ---------------------------------------------------------------------------
// 1. one full client session against a live service
// ---------------------------------------------------------------------------

std::string check_service_session() {
  FakePm backend(Catalog::load(testutil::read_fixture("catalog.tsv")));
  testutil::TempDir tmp;
  BridgeService::Options opts;
  opts.socket_path = (tmp.dir / "bridge.sock").string();
  BridgeService service(backend, opts);
  service.start();

  BridgeClient client(opts.socket_path);
  InstallResult installed = client.install({"gifski", "units"});

  std::set<std::string> got(installed.installed.begin(), installed.installed.end());
  expect(got == std::set<std::string>{"R-CRAN-Rcpp", "R-CRAN-units", "udunits2"},
         "installed set is not exactly {R-CRAN-Rcpp, R-CRAN-units, udunits2}");
  auto pos = [&](const std::string& name) {
    return std::find(installed.installed.begin(), installed.installed.end(), name) -
           installed.installed.begin();
  };
  expect(pos("R-CRAN-Rcpp") < pos("R-CRAN-units"), "R-CRAN-Rcpp must precede R-CRAN-units");
  expect(pos("udunits2") < pos("R-CRAN-units"), "udunits2 must precede R-CRAN-units");
  expect(installed.not_found == std::vector<std::string>{"gifski"},
         "gifski must come back as not_found");

  RemoveResult removed = client.remove({"units"});
  expect(!removed.removed.empty(), "remove of units removed nothing");
  expect(backend.query_installed().empty(),
         "installed set did not return to empty after removing units");
  service.stop();
  return "install resolves dependencies, remove sweeps them";
}

// ---------------------------------------------------------------------------
// 2. batch layering: validity on random graphs, tightness vs brute force
// ---------------------------------------------------------------------------

std::string check_batch_layering() {
  std::mt19937 rng(0xBA7C);
  for (int iter = 0; iter < 500; ++iter) {
    size_t n = (iter % 2 == 0) ? 2 + rng() % 11   // small: checked against brute force
                               : 2 + rng() % 39;  // large: validity only
    std::vector<PackageRecord> db(n);
    for (size_t i = 0; i < n; ++i) {
      db[i].name = "pkg" + std::to_string(i);
      db[i].version = VersionString::parse("1.0");
      for (size_t j = 0; j < i; ++j)
        if (rng() % 100 < 30) db[i].imports.push_back({db[j].name, std::nullopt});
    }
    DepGraph g = build_graph(db, kBuildFields);

    ExclusionMap seeds;
    if (iter % 2 == 1 && rng() % 3 == 0)
      seeds.emplace("pkg" + std::to_string(rng() % n),
                    ExclusionReason{ExclusionKind::UnsupportedSysreq, "operator"});

    BatchPlan plan = batch_plan(g, seeds);

    std::map<std::string, size_t> batch_of;
    for (size_t b = 0; b < plan.batches.size(); ++b)
      for (const std::string& name : plan.batches[b]) batch_of[name] = b + 1;

    for (const std::string& node : g.nodes)
      expect(batch_of.count(node) + plan.excluded.count(node) == 1,
             "every package must be batched or excluded, exactly once");

    for (const auto& [node, batch] : batch_of) {
      for (const std::string& dep : g.deps_of(node)) {
        expect(!plan.excluded.count(dep),
               "a surviving package still depends on an excluded one: " + node + " -> " + dep);
        expect(batch_of.at(dep) < batch, "dependency " + dep + " is not in an earlier batch than " + node);
      }
    }

    if (n <= 12 && seeds.empty()) {
      // independent check: layer index == longest dependency chain + 1
      std::function<size_t(const std::string&)> depth = [&](const std::string& node) -> size_t {
        size_t best = 0;
        for (const std::string& dep : g.deps_of(node)) best = std::max(best, depth(dep));
        return best + 1;
      };
      for (const std::string& node : g.nodes)
        expect(batch_of.at(node) == depth(node),
               "batch index of " + node + " is not the longest-path depth");
    }
  }
  return "500 random graphs, brute-force depth agreement on small ones";
}

// ---------------------------------------------------------------------------
// 3. compilation statistics against a closure oracle
// ---------------------------------------------------------------------------

void check_stats_on(const std::vector<PackageRecord>& db) {
  CompilationStats stats = compilation_stats(db);
  const std::set<std::string>& ignore = default_ignore_list();

  std::map<std::string, const PackageRecord*> by_name;
  for (const PackageRecord& rec : db) by_name.emplace(rec.name, &rec);

  auto hard_deps = [&](const PackageRecord& rec) {
    std::set<std::string> deps;
    for (const auto* list : {&rec.depends, &rec.imports})
      for (const DepSpec& dep : *list)
        if (!ignore.count(dep.name) && by_name.count(dep.name)) deps.insert(dep.name);
    return deps;
  };

  std::set<std::string> direct;
  for (const PackageRecord& rec : db)
    if (rec.needs_compilation) direct.insert(rec.name);

  std::set<std::string> indirect_only;
  for (const PackageRecord& rec : db) {
    if (direct.count(rec.name)) continue;
    std::set<std::string> seen;
    std::vector<std::string> frontier{rec.name};
    bool hit = false;
    while (!frontier.empty() && !hit) {
      std::string cur = frontier.back();
      frontier.pop_back();
      for (const std::string& dep : hard_deps(*by_name.at(cur))) {
        if (!seen.insert(dep).second) continue;
        if (direct.count(dep)) hit = true;
        frontier.push_back(dep);
      }
    }
    if (hit) indirect_only.insert(rec.name);
  }

  expect(stats.total == db.size(), "total must count every package");
  expect(stats.direct == direct, "direct set differs from the oracle");
  expect(stats.indirect_only == indirect_only, "indirect-only set differs from the oracle");
  expect(stats.either_pct == stats.direct_pct + stats.indirect_only_pct,
         "either_pct must equal direct_pct + indirect_only_pct exactly");
}

std::string check_compilation_stats() {
  for (const char* fixture : {"tiny.PACKAGES", "medium.PACKAGES"})
    check_stats_on(parse_package_db(testutil::read_fixture(fixture)));

  if (snapshot_path.empty()) return "fixture corpora only (no snapshot provided)";

  CompilationStats stats = compilation_stats(parse_package_db(slurp_file(snapshot_path)));
  expect(stats.direct_pct > 24.0, "snapshot: direct percentage not above 24");
  expect(stats.either_pct >= 75.0 && stats.either_pct <= 90.0,
         "snapshot: either percentage outside [75, 90]");
  char note[128];
  std::snprintf(note, sizeof(note), "snapshot: direct %.2f%%, either %.2f%%", stats.direct_pct,
                stats.either_pct);
  return note;
}

// ---------------------------------------------------------------------------
// 4. naming-convention discovery on both conventions plus the empty case
// ---------------------------------------------------------------------------

std::string check_discovery() {
  FakePm fedora(Catalog::load(testutil::read_fixture("catalog.tsv")));
  DiscoverResult upper = discover(fedora);
  expect(upper.mapping.prefix == "R-CRAN-", "expected prefix R-CRAN-");
  expect(upper.mapping.transform == NameTransform::Identity, "expected identity transform");

  FakePm debian(Catalog::load(testutil::read_fixture("catalog-debian.tsv")));
  DiscoverResult lower = discover(debian);
  expect(lower.mapping.prefix == "r-cran-", "expected prefix r-cran-");
  expect(lower.mapping.transform == NameTransform::Lowercase, "expected lowercase transform");

  FakePm bare{Catalog{}};
  bool threw = false;
  try {
    discover(bare);
  } catch (const Error& e) {
    expect(e.code() == Errc::NoMappingFound, "empty catalog threw the wrong error");
    threw = true;
  }
  expect(threw, "empty catalog must yield NoMappingFound");
  return "R-CRAN-/identity, r-cran-/lowercase, empty -> NoMappingFound";
}

// ---------------------------------------------------------------------------
// 5. direct calls and the socket path produce identical outcomes
// ---------------------------------------------------------------------------

std::string check_direct_service_differential() {
  std::mt19937 rng(0xD1FF);
  int sequences = 0;
  for (int world_i = 0; world_i < 25; ++world_i) {
    World w = make_world(rng);
    FakePm direct_pm(w.catalog);
    FakePm served_pm(w.catalog);

    testutil::TempDir tmp;
    BridgeService::Options opts;
    opts.socket_path = (tmp.dir / "bridge.sock").string();
    opts.mapping = w.mapping;
    BridgeService service(served_pm, opts);
    service.start();
    BridgeClient client(opts.socket_path);

    for (int seq = 0; seq < 8; ++seq, ++sequences) {
      size_t requests = 1 + rng() % 6;
      for (size_t r = 0; r < requests; ++r) {
        std::vector<std::string> names = pick_names(rng, w.r_pool);
        if (rng() % 5 < 3) {
          InstallResult got = client.install(names);
          BridgeOutcome want = bridge_install(direct_pm, w.mapping, names);
          expect(got.installed == want.affected, "install: affected lists diverged");
          expect(got.not_found == want.not_found, "install: not_found lists diverged");
        } else {
          RemoveResult got = client.remove(names);
          BridgeOutcome want = bridge_remove(direct_pm, w.mapping, names);
          expect(got.removed == want.affected, "remove: affected lists diverged");
          expect(got.not_found == want.not_found, "remove: not_found lists diverged");
        }
      }
      expect(direct_pm.query_installed() == served_pm.query_installed(),
             "installed sets diverged after a sequence");
    }
    expect(direct_pm.save_state() == served_pm.save_state(),
           "backend states diverged at end of world");
    service.stop();
  }
  return std::to_string(sequences) + " request sequences in lockstep";
}

// ---------------------------------------------------------------------------
// 6. transaction serialization under concurrent clients
// ---------------------------------------------------------------------------

std::string check_concurrent_serialization() {
  std::mt19937 seed_rng(0xACCE55);
  World w = make_world(seed_rng);
  while (w.catalog.entries.size() < 4) w = make_world(seed_rng);

  FakePm backend(w.catalog);
  testutil::TempDir tmp;
  BridgeService::Options opts;
  opts.socket_path = (tmp.dir / "bridge.sock").string();
  opts.mapping = w.mapping;
  BridgeService service(backend, opts);
  service.start();

  std::mutex errors_mutex;
  std::vector<std::string> errors;
  std::vector<std::thread> clients;
  for (int t = 0; t < 8; ++t) {
    clients.emplace_back([&, t] {
      try {
        std::mt19937 rng(1000 + t);
        BridgeClient client(opts.socket_path);
        for (int i = 0; i < 20; ++i) {
          std::vector<std::string> names = pick_names(rng, w.r_pool);
          if (rng() % 2)
            client.install(names);
          else
            client.remove(names);
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(errors_mutex);
        errors.push_back(e.what());
      }
    });
  }
  for (std::thread& t : clients) t.join();
  expect(errors.empty(), "client thread failed: " + (errors.empty() ? "" : errors.front()));

  std::vector<TransactionRecord> journal = backend.transaction_log();
  expect(!journal.empty(), "160 requests left no transactions");
  for (size_t i = 0; i < journal.size(); ++i) {
    expect(journal[i].end_seq == journal[i].begin_seq + 1,
           "a transaction spans more than one sequence step: interleaving");
    if (i > 0)
      expect(journal[i].begin_seq >= journal[i - 1].end_seq,
             "transactions overlap in sequence numbers");
  }
  expect(FakePm::replay(w.catalog, journal) == backend.query_installed(),
         "journal replay does not reproduce the final installed set");
  service.stop();
  return std::to_string(journal.size()) + " transactions, zero interleaved";
}

// ---------------------------------------------------------------------------
// 7. recipe field content and byte-deterministic rendering
// ---------------------------------------------------------------------------

std::string check_recipe_rendering() {
  std::vector<PackageRecord> db = parse_package_db(testutil::read_fixture("tiny.PACKAGES"));
  const PackageRecord* units = nullptr;
  for (const PackageRecord& rec : db)
    if (rec.name == "units") units = &rec;
  expect(units != nullptr, "tiny fixture lost its units record");

  SysreqsDB sysreqs = SysreqsDB::load(testutil::read_fixture("sysreqs.tsv"));
  std::string template_text = testutil::read_fixture("template.spec");

  Recipe first = generate_recipe(*units, sysreqs.find("units"), template_text);
  Recipe second = generate_recipe(*units, sysreqs.find("units"), template_text);

  expect(first.system_name == "R-CRAN-units", "system name must be R-CRAN-units");
  expect(first.version == "0.6.7", "version must fold to 0.6.7");
  auto has = [&](const std::string& name) {
    return std::find(first.runtime_requires.begin(), first.runtime_requires.end(), name) !=
           first.runtime_requires.end();
  };
  expect(has("R-CRAN-Rcpp"), "runtime requires must include R-CRAN-Rcpp");
  expect(has("udunits2"), "runtime requires must include udunits2");
  expect(first.body.find("/usr/local/lib/R/library") != std::string::npos,
         "rendered body must carry the library install prefix");
  expect(!first.body.empty() && first.body == second.body,
         "two renders must be byte-identical");
  return "fields pinned, render is deterministic";
}

// ---------------------------------------------------------------------------
// 8. sync planning reaches a fixed point after one apply
// ---------------------------------------------------------------------------

std::string check_sync_fixed_point() {
  static const char* kPool[] = {"apricot", "banana", "cherry", "damson",
                                "elder",   "fig",    "grape",  "honey"};
  std::mt19937 rng(0x5F4C);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<PackageRecord> upstream;
    std::vector<std::string> members;
    for (const char* name : kPool) {
      if (rng() % 4 == 0) continue;  // archived upstream
      PackageRecord rec;
      rec.name = name;
      rec.version = VersionString::parse(random_version_text(rng, nullptr));
      rec.needs_compilation = rng() % 2;
      for (const std::string& dep : members)
        if (rng() % 3 == 0) rec.imports.push_back({dep, std::nullopt});
      members.push_back(name);
      upstream.push_back(std::move(rec));
    }
    if (upstream.empty()) {
      PackageRecord rec;
      rec.name = kPool[0];
      rec.version = VersionString::parse("1.0");
      upstream.push_back(std::move(rec));
    }

    RepoState repo;
    for (const char* name : kPool)
      if (rng() % 2)
        repo.packages[name] = BuiltPackage{
            VersionString::parse(random_version_text(rng, nullptr)), int(1 + rng() % 5)};
    for (const PackageRecord& rec : upstream)  // some entries already current
      if (repo.packages.count(rec.name) && rng() % 2) repo.packages[rec.name].version = rec.version;

    ExclusionMap seeds;
    if (rng() % 4 == 0)
      seeds.emplace(upstream[rng() % upstream.size()].name,
                    ExclusionReason{ExclusionKind::UnsupportedSysreq, "operator"});

    SyncPlan plan = plan_sync(upstream, repo, seeds);
    RepoState next = apply_sync_plan(repo, plan, upstream);
    SyncPlan again = plan_sync(upstream, next, seeds);
    expect(again.builds.empty(), "re-planning after apply still wants builds");
    expect(again.removals.empty(), "re-planning after apply still wants removals");
  }
  return "100 random snapshot pairs converge in one apply";
}

// ---------------------------------------------------------------------------
// 9. format round-trips and the version total order
// ---------------------------------------------------------------------------

void check_dcf_round_trips(std::mt19937& rng) {
  static const char kNameChars[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-";
  static const char kValueChars[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .,:;()[]<>=+-_/";
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<Stanza> doc;
    size_t stanza_count = 1 + rng() % 4;
    for (size_t s = 0; s < stanza_count; ++s) {
      Stanza stanza;
      std::set<std::string> used;
      size_t field_count = 1 + rng() % 6;
      for (size_t f = 0; f < field_count; ++f) {
        std::string name(1, char('A' + rng() % 26));
        size_t len = rng() % 8;
        for (size_t i = 0; i < len; ++i) name += kNameChars[rng() % (sizeof(kNameChars) - 1)];
        if (!used.insert(name).second) continue;
        std::string value;
        size_t vlen = rng() % 25;
        for (size_t i = 0; i < vlen; ++i) value += kValueChars[rng() % (sizeof(kValueChars) - 1)];
        stanza.append(name, std::string(trim(value)));
      }
      if (!stanza.empty()) doc.push_back(std::move(stanza));
    }
    if (doc.empty()) continue;
    expect(parse_dcf(render_dcf(doc)) == doc, "DCF render/parse round-trip changed the document");
  }
}

void check_sysreqs_round_trips(std::mt19937& rng) {
  static const char* kDistros[] = {"fedora", "debian", "suse", "*"};
  auto token = [&rng] {
    std::string t;
    size_t len = 2 + rng() % 7;
    for (size_t i = 0; i < len; ++i) t += "abcdefghijklmnopqrstuvwxyz0123456789-"[rng() % 37];
    return t;
  };
  for (int iter = 0; iter < 1000; ++iter) {
    SysreqsDB db;
    size_t entry_count = 1 + rng() % 5;
    for (size_t i = 0; i < entry_count; ++i) {
      SysreqsEntry entry;
      entry.r_package = "p" + std::to_string(i) + token();
      if (db.entries.count(entry.r_package)) continue;
      if (rng() % 5 == 0) {
        entry.excluded = "reason " + std::to_string(rng() % 100);
      } else {
        size_t distro_count = 1 + rng() % 3;
        for (size_t d = 0; d < distro_count; ++d) {
          PhaseSets sets;
          size_t nb = rng() % 3, nr = rng() % 3;
          for (size_t b = 0; b < nb; ++b) sets.build.insert(token());
          for (size_t r = 0; r < nr; ++r) sets.run.insert(token());
          if (sets.build.empty() && sets.run.empty()) sets.build.insert(token());
          db.entries[entry.r_package].targets[kDistros[rng() % 4]] = sets;
        }
        db.entries[entry.r_package].r_package = entry.r_package;
        continue;
      }
      db.entries[entry.r_package] = entry;
    }
    std::string text = db.save();
    SysreqsDB loaded = SysreqsDB::load(text);
    expect(loaded.entries == db.entries, "sysreqs DB load(save()) changed the entries");
    expect(loaded.save() == text, "sysreqs DB save is not a fixed point");
  }
}

void check_version_total_order(std::mt19937& rng) {
  auto oracle = [](const std::vector<unsigned long long>& a,
                   const std::vector<unsigned long long>& b) {
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
      unsigned long long av = i < a.size() ? a[i] : 0;
      unsigned long long bv = i < b.size() ? b[i] : 0;
      if (av != bv) return av < bv ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  };
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<unsigned long long> ac, bc, cc;
    VersionString a = VersionString::parse(random_version_text(rng, &ac));
    VersionString b = VersionString::parse(random_version_text(rng, &bc));
    VersionString c = VersionString::parse(random_version_text(rng, &cc));

    expect(compare_versions(a, b) == oracle(ac, bc), "comparison disagrees with the oracle");
    expect(compare_versions(a, a) == std::strong_ordering::equal, "not reflexive");

    auto flip = [](std::strong_ordering o) {
      if (o == std::strong_ordering::less) return std::strong_ordering::greater;
      if (o == std::strong_ordering::greater) return std::strong_ordering::less;
      return std::strong_ordering::equal;
    };
    expect(compare_versions(b, a) == flip(compare_versions(a, b)), "not antisymmetric");

    if (compare_versions(a, b) != std::strong_ordering::greater &&
        compare_versions(b, c) != std::strong_ordering::greater)
      expect(compare_versions(a, c) != std::strong_ordering::greater, "not transitive");

    // the same components spelled with different separators compare equal
    std::string respelled;
    for (size_t i = 0; i < ac.size(); ++i) {
      if (i) respelled += (a.raw.find('-') != std::string::npos) ? '.' : '-';
      respelled += std::to_string(ac[i]);
    }
    expect(compare_versions(a, VersionString::parse(respelled)) == std::strong_ordering::equal,
           "separator spelling changed the ordering");
  }
}

std::string check_round_trips() {
  std::mt19937 rng(0x5EED);
  check_dcf_round_trips(rng);
  check_sysreqs_round_trips(rng);
  check_version_total_order(rng);
  return "1000 cases each: DCF, sysreqs DB, version ordering";
}

// ---------------------------------------------------------------------------

struct Criterion {
  const char* label;
  std::function<std::string()> run;
  double budget_seconds;  // 0 = no stated budget
};

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--snapshot") && i + 1 < argc) {
      snapshot_path = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--snapshot PACKAGES-file]\n", argv[0]);
      return 2;
    }
  }
  if (snapshot_path.empty())
    if (const char* env = std::getenv("PKGBRIDGE_SNAPSHOT")) snapshot_path = env;

  const std::vector<Criterion> criteria = {
      {"service session installs and autoremoves", check_service_session, 1.0},
      {"batch layering is valid and tight", check_batch_layering, 10.0},
      {"compilation stats match the closure oracle", check_compilation_stats, 0.0},
      {"naming-convention discovery", check_discovery, 1.0},
      {"direct and service paths agree", check_direct_service_differential, 30.0},
      {"transactions serialize under concurrent load", check_concurrent_serialization, 0.0},
      {"recipe fields and deterministic rendering", check_recipe_rendering, 0.0},
      {"sync plans reach a fixed point", check_sync_fixed_point, 0.0},
      {"format round-trips and version ordering", check_round_trips, 0.0},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& criterion = criteria[i];
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string note;
    try {
      note = criterion.run();
    } catch (const std::exception& e) {
      ok = false;
      note = e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && criterion.budget_seconds > 0 && seconds > criterion.budget_seconds) {
      ok = false;
      note = "exceeded the " + std::to_string(criterion.budget_seconds) + "s budget";
    }
    if (!ok) ++failures;
    std::printf("%s  %zu/%zu  %-46s  %7.3fs  %s\n", ok ? "PASS" : "FAIL", i + 1, criteria.size(),
                criterion.label, seconds, note.c_str());
    std::fflush(stdout);
  }
  if (failures) std::printf("%d of %zu criteria FAILED\n", failures, criteria.size());
  else std::printf("all %zu criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
