#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace pkgbridge {

// Streamed to the caller while a transaction runs; one human-readable line
// per call, no trailing newline.
using ProgressFn = std::function<void(const std::string&)>;

struct InstalledPackage {
  std::string version;
  // Asked for by name, as opposed to pulled in as a dependency. Autoremoval
  // keeps exactly what the explicit set reaches.
  bool explicit_install = false;
  bool operator==(const InstalledPackage&) const = default;
};

struct TransactionRecord {
  unsigned long long begin_seq = 0;
  unsigned long long end_seq = 0;
  std::string op;                  // "install" | "remove" | "remove-keep" (no autoremove)
  std::vector<std::string> names;  // as requested, request order
  unsigned long long set_hash = 0;    // hash of the installed set after commit
  unsigned long long chain_hash = 0;  // folds the previous record's chain
  bool operator==(const TransactionRecord&) const = default;
};

// A system package manager, reduced to the calls the bridge needs. Soft
// outcomes are data; implementations throw Error only for contract
// violations (unknown package, reentrant call, backend breakage).
class PackageBackend {
public:
  virtual ~PackageBackend() = default;

  // name -> version of everything installable.
  virtual std::map<std::string, std::string> list_available() = 0;

  // Installs the named packages and their dependency closure; returns the
  // newly installed names in install order (dependencies first).
  virtual std::vector<std::string> install(const std::vector<std::string>& names,
                                           const ProgressFn& progress = {}) = 0;

  // Removes the named packages and every installed dependent; with
  // autoremove also drops dependencies nothing explicit reaches any more.
  // Returns the erased names in erase order (dependents first).
  virtual std::vector<std::string> remove(const std::vector<std::string>& names, bool autoremove,
                                          const ProgressFn& progress = {}) = 0;

  virtual std::map<std::string, InstalledPackage> query_installed() = 0;

  virtual std::vector<TransactionRecord> transaction_log() = 0;
};

}  // namespace pkgbridge
