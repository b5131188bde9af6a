#pragma once

#include <atomic>
#include <set>
#include <string>
#include <string_view>

#include "pkgbridge/connector.hpp"

namespace pkgbridge {

// Closed world of installable packages. TSV: name<TAB>version<TAB>dep1,dep2
// ('#' comments, empty dep column allowed); every dependency must itself be
// a catalog member.
struct Catalog {
  struct Entry {
    std::string version;  // opaque system version, never parsed
    std::set<std::string> depends;
    bool operator==(const Entry&) const = default;
  };
  std::map<std::string, Entry> entries;

  static Catalog load(std::string_view text);  // throws Error(MalformedLine)
  std::string save() const;
  bool operator==(const Catalog&) const = default;
};

// In-memory package manager with real transaction semantics: dependency
// closure on install, dependents-first erase, explicit/implicit marking,
// autoremoval, and a hash-chained journal. The installed set is dependency-
// closed after every operation.
class FakePm : public PackageBackend {
public:
  explicit FakePm(Catalog catalog) : catalog_(std::move(catalog)) {}

  std::map<std::string, std::string> list_available() override;
  std::vector<std::string> install(const std::vector<std::string>& names,
                                   const ProgressFn& progress = {}) override;
  std::vector<std::string> remove(const std::vector<std::string>& names, bool autoremove,
                                  const ProgressFn& progress = {}) override;
  std::map<std::string, InstalledPackage> query_installed() override;
  std::vector<TransactionRecord> transaction_log() override;

  const Catalog& catalog() const noexcept { return catalog_; }

  // Replays a journal against a fresh instance and returns the final
  // installed set, verifying every record's hashes along the way; a broken
  // chain throws Error(BackendFailure).
  static std::map<std::string, InstalledPackage> replay(const Catalog& catalog,
                                                        const std::vector<TransactionRecord>& log);

  // Installed set plus journal position, TSV; enough to continue in a new
  // process. The journal entries themselves are not persisted.
  std::string save_state() const;
  void load_state(std::string_view text);  // throws Error(MalformedLine)

private:
  struct BusyGuard;
  unsigned long long commit(const std::string& op, const std::vector<std::string>& names);

  Catalog catalog_;
  std::map<std::string, InstalledPackage> installed_;
  std::vector<TransactionRecord> journal_;
  unsigned long long seq_ = 0;
  unsigned long long chain_ = 0;
  std::atomic<bool> busy_{false};
};

// Hash of an installed set over its canonical serialization; replay and the
// journal both use it, so any drift is visible.
unsigned long long installed_set_hash(const std::map<std::string, InstalledPackage>& installed);

std::string render_journal(const std::vector<TransactionRecord>& log);

}  // namespace pkgbridge
