#include "pkgbridge/fakepm.hpp"

#include <algorithm>
#include <deque>

#include "pkgbridge/errors.hpp"
#include "pkgbridge/util.hpp"

namespace pkgbridge {

namespace {

[[noreturn]] void bad_line(size_t lineno, const std::string& what) {
  throw Error(Errc::MalformedLine, "catalog line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

Catalog Catalog::load(std::string_view text) {
  Catalog cat;
  size_t lineno = 0;
  for (const std::string& line : split_lines(text)) {
    ++lineno;
    std::string_view stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) bad_line(lineno, "expected name<TAB>version[<TAB>deps]");
    std::string name(trim(cols[0]));
    if (name.empty()) bad_line(lineno, "empty package name");
    Entry entry;
    entry.version = std::string(trim(cols[1]));
    if (entry.version.empty()) bad_line(lineno, "empty version");
    if (cols.size() == 3) {
      for (const std::string& part : split(cols[2], ',')) {
        std::string dep(trim(part));
        if (dep.empty()) continue;
        if (dep == name) bad_line(lineno, "'" + name + "' depends on itself");
        entry.depends.insert(std::move(dep));
      }
    }
    if (!cat.entries.emplace(std::move(name), std::move(entry)).second)
      bad_line(lineno, "duplicate package");
  }
  for (const auto& [name, entry] : cat.entries)
    for (const std::string& dep : entry.depends)
      if (!cat.entries.count(dep))
        throw Error(Errc::MalformedLine,
                    "catalog: '" + name + "' depends on unknown package '" + dep + "'");
  return cat;
}

std::string Catalog::save() const {
  std::string out;
  for (const auto& [name, entry] : entries) {
    out += name;
    out += '\t';
    out += entry.version;
    if (!entry.depends.empty()) {
      out += '\t';
      out += join(std::vector<std::string>(entry.depends.begin(), entry.depends.end()), ",");
    }
    out += '\n';
  }
  return out;
}

unsigned long long installed_set_hash(const std::map<std::string, InstalledPackage>& installed) {
  std::string canon;
  for (const auto& [name, pkg] : installed) {
    canon += name;
    canon += '\t';
    canon += pkg.version;
    canon += '\t';
    canon += pkg.explicit_install ? '1' : '0';
    canon += '\n';
  }
  return fnv1a64(canon);
}

struct FakePm::BusyGuard {
  explicit BusyGuard(FakePm& pm) : pm_(pm) {
    // Reentrancy (a progress callback calling back in) must fail, not
    // deadlock, so this is a flag rather than a mutex.
    if (pm_.busy_.exchange(true))
      throw Error(Errc::ReentrantCall, "backend is mid-transaction");
  }
  ~BusyGuard() { pm_.busy_.store(false); }
  FakePm& pm_;
};

std::map<std::string, std::string> FakePm::list_available() {
  std::map<std::string, std::string> out;
  for (const auto& [name, entry] : catalog_.entries) out.emplace(name, entry.version);
  return out;
}

std::map<std::string, InstalledPackage> FakePm::query_installed() { return installed_; }

std::vector<TransactionRecord> FakePm::transaction_log() { return journal_; }

unsigned long long FakePm::commit(const std::string& op, const std::vector<std::string>& names) {
  TransactionRecord rec;
  rec.begin_seq = seq_;  // the begin-of-transaction increment's value
  rec.end_seq = ++seq_;
  rec.op = op;
  rec.names = names;
  rec.set_hash = installed_set_hash(installed_);
  std::string serialized = std::to_string(rec.begin_seq) + '\t' + std::to_string(rec.end_seq) +
                           '\t' + op + '\t' + join(names, ",") + '\t' +
                           std::to_string(rec.set_hash) + '\n';
  chain_ = fnv1a64(serialized, chain_);
  rec.chain_hash = chain_;
  journal_.push_back(rec);
  return rec.end_seq;
}

std::vector<std::string> FakePm::install(const std::vector<std::string>& names,
                                         const ProgressFn& progress) {
  BusyGuard guard(*this);
  if (names.empty()) return {};
  std::set<std::string> requested;
  for (const std::string& name : names) {
    if (!catalog_.entries.count(name))
      throw Error(Errc::UnknownPackage, "no such package: " + name);
    requested.insert(name);
  }

  // Dependency closure of the request.
  std::set<std::string> needed = requested;
  std::deque<std::string> queue(requested.begin(), requested.end());
  while (!queue.empty()) {
    std::string name = std::move(queue.front());
    queue.pop_front();
    for (const std::string& dep : catalog_.entries.at(name).depends)
      if (needed.insert(dep).second) queue.push_back(dep);
  }

  std::set<std::string> missing;
  for (const std::string& name : needed)
    if (!installed_.count(name)) missing.insert(name);

  // Dependencies first; lexicographically smallest ready package next.
  std::map<std::string, int> pending;
  std::map<std::string, std::set<std::string>> dependents;
  std::set<std::string> ready;
  for (const std::string& name : missing) {
    int count = 0;
    for (const std::string& dep : catalog_.entries.at(name).depends) {
      if (!missing.count(dep)) continue;
      ++count;
      dependents[dep].insert(name);
    }
    pending[name] = count;
    if (count == 0) ready.insert(name);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string name = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(name);
    for (const std::string& dependent : dependents[name])
      if (--pending.at(dependent) == 0) ready.insert(dependent);
  }
  if (order.size() != missing.size())
    throw Error(Errc::BackendFailure, "dependency cycle in catalog");

  ++seq_;  // transaction begins
  if (progress) progress("Preparing transaction");
  size_t i = 0;
  for (const std::string& name : order) {
    installed_[name] = {catalog_.entries.at(name).version, requested.count(name) != 0};
    if (progress)
      progress("Installing : " + name + "-" + catalog_.entries.at(name).version + " (" +
               std::to_string(++i) + "/" + std::to_string(order.size()) + ")");
  }
  if (order.empty() && progress) progress("Nothing to do");
  for (const std::string& name : requested) installed_.at(name).explicit_install = true;
  commit("install", names);
  if (progress) progress("Complete");
  return order;
}

std::vector<std::string> FakePm::remove(const std::vector<std::string>& names, bool autoremove,
                                        const ProgressFn& progress) {
  BusyGuard guard(*this);
  if (names.empty()) return {};
  std::set<std::string> victims;
  for (const std::string& name : names) {
    if (!catalog_.entries.count(name))
      throw Error(Errc::UnknownPackage, "no such package: " + name);
    if (installed_.count(name)) victims.insert(name);  // not installed: nothing to erase
  }

  // Installed dependents go too — the installed set stays dependency-closed.
  std::map<std::string, std::set<std::string>> dependents;
  for (const auto& [name, pkg] : installed_)
    for (const std::string& dep : catalog_.entries.at(name).depends)
      if (installed_.count(dep)) dependents[dep].insert(name);
  std::deque<std::string> queue(victims.begin(), victims.end());
  while (!queue.empty()) {
    std::string name = std::move(queue.front());
    queue.pop_front();
    for (const std::string& dependent : dependents[name])
      if (victims.insert(dependent).second) queue.push_back(dependent);
  }

  if (autoremove) {
    // Keep what the remaining explicit packages reach; drop the rest of the
    // implicit ones.
    std::set<std::string> reachable;
    std::deque<std::string> roots;
    for (const auto& [name, pkg] : installed_)
      if (pkg.explicit_install && !victims.count(name)) {
        reachable.insert(name);
        roots.push_back(name);
      }
    while (!roots.empty()) {
      std::string name = std::move(roots.front());
      roots.pop_front();
      for (const std::string& dep : catalog_.entries.at(name).depends)
        if (installed_.count(dep) && !victims.count(dep) && reachable.insert(dep).second)
          roots.push_back(dep);
    }
    for (const auto& [name, pkg] : installed_)
      if (!victims.count(name) && !reachable.count(name)) victims.insert(name);
  }

  // Dependents first: erase a package only once nothing installed needs it.
  std::map<std::string, int> holding;
  std::map<std::string, std::set<std::string>> releases;
  std::set<std::string> ready;
  for (const std::string& name : victims) {
    int count = 0;
    for (const std::string& dependent : dependents[name])
      if (victims.count(dependent)) ++count;
    for (const std::string& dep : catalog_.entries.at(name).depends)
      if (victims.count(dep)) releases[name].insert(dep);
    holding[name] = count;
    if (count == 0) ready.insert(name);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string name = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(name);
    for (const std::string& dep : releases[name])
      if (--holding.at(dep) == 0) ready.insert(dep);
  }
  if (order.size() != victims.size())
    throw Error(Errc::BackendFailure, "dependency cycle in installed set");

  ++seq_;  // transaction begins
  if (progress) progress("Preparing transaction");
  size_t i = 0;
  for (const std::string& name : order) {
    if (progress)
      progress("Erasing : " + name + "-" + installed_.at(name).version + " (" +
               std::to_string(++i) + "/" + std::to_string(order.size()) + ")");
    installed_.erase(name);
  }
  if (order.empty() && progress) progress("Nothing to do");
  commit(autoremove ? "remove" : "remove-keep", names);
  if (progress) progress("Complete");
  return order;
}

std::map<std::string, InstalledPackage> FakePm::replay(const Catalog& catalog,
                                                       const std::vector<TransactionRecord>& log) {
  FakePm pm(catalog);
  unsigned long long chain = 0;
  for (const TransactionRecord& rec : log) {
    if (rec.op == "install") {
      pm.install(rec.names);
    } else if (rec.op == "remove") {
      pm.remove(rec.names, true);
    } else if (rec.op == "remove-keep") {
      pm.remove(rec.names, false);
    } else {
      throw Error(Errc::BackendFailure, "journal has unknown op '" + rec.op + "'");
    }
    unsigned long long set_hash = installed_set_hash(pm.installed_);
    if (set_hash != rec.set_hash)
      throw Error(Errc::BackendFailure,
                  "journal set hash mismatch at seq " + std::to_string(rec.end_seq));
    std::string serialized = std::to_string(rec.begin_seq) + '\t' + std::to_string(rec.end_seq) +
                             '\t' + rec.op + '\t' + join(rec.names, ",") + '\t' +
                             std::to_string(rec.set_hash) + '\n';
    chain = fnv1a64(serialized, chain);
    if (chain != rec.chain_hash)
      throw Error(Errc::BackendFailure,
                  "journal chain broken at seq " + std::to_string(rec.end_seq));
  }
  return pm.installed_;
}

std::string FakePm::save_state() const {
  std::string out = "# seq: " + std::to_string(seq_) + "\n# chain: " + std::to_string(chain_) + "\n";
  for (const auto& [name, pkg] : installed_) {
    out += name;
    out += '\t';
    out += pkg.version;
    out += '\t';
    out += pkg.explicit_install ? '1' : '0';
    out += '\n';
  }
  return out;
}

void FakePm::load_state(std::string_view text) {
  std::map<std::string, InstalledPackage> installed;
  unsigned long long seq = 0;
  unsigned long long chain = 0;
  size_t lineno = 0;
  for (const std::string& line : split_lines(text)) {
    ++lineno;
    std::string_view stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped[0] == '#') {
      std::string_view rest;
      if (stripped.rfind("# seq:", 0) == 0)
        rest = trim(stripped.substr(6));
      else if (stripped.rfind("# chain:", 0) == 0)
        rest = trim(stripped.substr(8));
      else
        continue;
      unsigned long long value = 0;
      for (char c : rest) {
        if (c < '0' || c > '9')
          throw Error(Errc::MalformedLine, "state line " + std::to_string(lineno) + ": bad number");
        value = value * 10 + static_cast<unsigned long long>(c - '0');
      }
      (stripped[2] == 's' ? seq : chain) = value;
      continue;
    }
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3)
      throw Error(Errc::MalformedLine,
                  "state line " + std::to_string(lineno) + ": expected name<TAB>version<TAB>flag");
    std::string name(trim(cols[0]));
    if (!catalog_.entries.count(name))
      throw Error(Errc::MalformedLine,
                  "state line " + std::to_string(lineno) + ": '" + name + "' not in catalog");
    std::string flag(trim(cols[2]));
    if (flag != "0" && flag != "1")
      throw Error(Errc::MalformedLine,
                  "state line " + std::to_string(lineno) + ": explicit flag must be 0 or 1");
    installed[name] = {std::string(trim(cols[1])), flag == "1"};
  }
  for (const auto& [name, pkg] : installed)
    for (const std::string& dep : catalog_.entries.at(name).depends)
      if (!installed.count(dep))
        throw Error(Errc::MalformedLine,
                    "state: '" + name + "' installed without its dependency '" + dep + "'");
  installed_ = std::move(installed);
  seq_ = seq;
  chain_ = chain;
  journal_.clear();
}

std::string render_journal(const std::vector<TransactionRecord>& log) {
  std::string out;
  for (const TransactionRecord& rec : log) {
    out += std::to_string(rec.begin_seq);
    out += '\t';
    out += std::to_string(rec.end_seq);
    out += '\t';
    out += rec.op;
    out += '\t';
    out += join(rec.names, ",");
    out += '\t';
    out += std::to_string(rec.set_hash);
    out += '\t';
    out += std::to_string(rec.chain_hash);
    out += '\n';
  }
  return out;
}

}  // namespace pkgbridge
