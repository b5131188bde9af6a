// Command-line front end: repository planning (stats, batches, recipe,
// sync-plan, scrape-sysreqs), the bridge service (serve), and its client
// side (discover, install, remove, enable, disable).
//
// Data goes to stdout as TSV (or JSON with --format json); diagnostics and
// progress go to stderr. Exit 0 on success — a package the backend lacks is
// data, not failure — 1 on runtime errors, 2 on usage errors.

#include <signal.h>

#include <atomic>
#include <cstdio>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pkgbridge/bridge.hpp"
#include "pkgbridge/client.hpp"
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

namespace {

using namespace pkgbridge;
using nlohmann::json;

std::string fmt2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::vector<PackageRecord> load_db(const std::string& path) {
  return parse_package_db(slurp_file(path));
}

// Exclusion seeds: curator-excluded sysreqs entries plus an operator file of
// name<TAB>reason lines.
ExclusionMap load_exclusions(const std::string& sysreqs_path, const std::string& exclude_path) {
  ExclusionMap seeds;
  if (!sysreqs_path.empty()) {
    SysreqsDB db = SysreqsDB::load(slurp_file(sysreqs_path));
    for (const auto& [name, entry] : db.entries)
      if (entry.excluded) seeds.emplace(name, ExclusionReason{ExclusionKind::UnsupportedSysreq, *entry.excluded});
  }
  if (!exclude_path.empty()) {
    size_t lineno = 0;
    for (const std::string& line : split_lines(slurp_file(exclude_path))) {
      ++lineno;
      std::string_view stripped = trim(line);
      if (stripped.empty() || stripped[0] == '#') continue;
      std::vector<std::string> cols = split(line, '\t');
      std::string name(trim(cols[0]));
      if (name.empty())
        throw Error(Errc::MalformedLine, "exclude line " + std::to_string(lineno) + ": empty name");
      std::string reason = cols.size() > 1 ? std::string(trim(cols[1])) : "excluded by operator";
      seeds[name] = {ExclusionKind::UnsupportedSysreq, reason};
    }
  }
  return seeds;
}

CyclePolicy parse_policy(const std::string& name) {
  if (name == "collapse") return CyclePolicy::Collapse;
  if (name == "reject") return CyclePolicy::Reject;
  throw Error(Errc::InvalidRequest, "unknown cycle policy '" + name + "'");
}

NameTransform transform_or_throw(const std::string& name) {
  std::optional<NameTransform> t = parse_transform(name);
  if (!t) throw Error(Errc::InvalidRequest, "unknown transform '" + name + "'");
  return *t;
}

// ---- stats ----------------------------------------------------------------

void run_stats(const std::string& packages, const std::string& format) {
  CompilationStats stats = compilation_stats(load_db(packages));
  size_t either_count = stats.direct.size() + stats.indirect_only.size();
  if (format == "json") {
    json j{{"total", stats.total},
           {"direct", {{"count", stats.direct.size()}, {"pct", stats.direct_pct}}},
           {"indirect_only", {{"count", stats.indirect_only.size()}, {"pct", stats.indirect_only_pct}}},
           {"either", {{"count", either_count}, {"pct", stats.either_pct}}}};
    std::cout << j.dump() << '\n';
    return;
  }
  std::cout << "total\t" << stats.total << '\n'
            << "direct\t" << stats.direct.size() << '\t' << fmt2(stats.direct_pct) << '\n'
            << "indirect-only\t" << stats.indirect_only.size() << '\t'
            << fmt2(stats.indirect_only_pct) << '\n'
            << "either\t" << either_count << '\t' << fmt2(stats.either_pct) << '\n';
}

// ---- batches ---------------------------------------------------------------

void run_batches(const std::string& packages, const std::string& sysreqs,
                 const std::string& exclude, const std::string& policy,
                 const std::string& format) {
  DepGraph g = build_graph(load_db(packages), kBuildFields);
  BatchPlan plan = batch_plan(g, load_exclusions(sysreqs, exclude), parse_policy(policy));
  if (format == "json") {
    json excluded = json::object();
    for (const auto& [name, reason] : plan.excluded)
      excluded[name] = {{"kind", exclusion_kind_name(reason.kind)}, {"detail", reason.detail}};
    std::cout << json{{"batches", plan.batches}, {"excluded", excluded}}.dump() << '\n';
    return;
  }
  std::cout << render_batch_plan(plan);
}

// ---- recipe ----------------------------------------------------------------

struct RecipeRow {
  std::string tsv;
  json js;
  bool raw = false;  // already newline-terminated body text, not a TSV row
};

void run_recipe(const std::string& packages, const std::string& template_path,
                const std::string& sysreqs_path, const std::string& out_dir, unsigned jobs,
                const RecipeOptions& base_opts, std::vector<std::string> names,
                const std::string& format) {
  std::vector<PackageRecord> db = load_db(packages);
  SysreqsDB sysreqs;
  if (!sysreqs_path.empty()) sysreqs = SysreqsDB::load(slurp_file(sysreqs_path));
  std::string template_text = slurp_file(template_path);

  std::vector<const PackageRecord*> selected;
  if (names.empty()) {
    for (const PackageRecord& rec : db) selected.push_back(&rec);
  } else {
    std::map<std::string, const PackageRecord*> by_name;
    for (const PackageRecord& rec : db) by_name.emplace(rec.name, &rec);
    for (const std::string& name : names) {
      auto it = by_name.find(name);
      if (it == by_name.end()) throw Error(Errc::UnknownPackage, "not in the index: " + name);
      selected.push_back(it->second);
    }
  }

  std::vector<RecipeRow> rows(selected.size());
  std::vector<std::exception_ptr> failures(selected.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      size_t i = cursor.fetch_add(1);
      if (i >= selected.size()) return;
      const PackageRecord& rec = *selected[i];
      try {
        Recipe recipe = generate_recipe(rec, sysreqs.find(rec.name), template_text, base_opts);
        if (out_dir.empty()) {  // no directory: recipe text itself is the data
          rows[i] = {recipe.body,
                     json{{"status", "rendered"}, {"name", rec.name}, {"body", recipe.body}},
                     true};
        } else {
          std::string path = write_recipe(recipe, out_dir);
          rows[i] = {"WROTE\t" + path,
                     json{{"status", "wrote"}, {"name", rec.name}, {"path", path}}, false};
        }
      } catch (const Error& e) {
        if (e.code() == Errc::ExcludedPackage) {
          rows[i] = {"EXCLUDED\t" + rec.name + "\t" + e.what(),
                     json{{"status", "excluded"}, {"name", rec.name}, {"detail", e.what()}}};
        } else if (e.code() == Errc::NeedsCuration) {
          rows[i] = {"NEEDS-CURATION\t" + rec.name + "\t" + rec.system_requirements,
                     json{{"status", "needs-curation"},
                          {"name", rec.name},
                          {"raw", rec.system_requirements}}};
        } else {
          failures[i] = std::current_exception();
          return;
        }
      } catch (...) {
        failures[i] = std::current_exception();
        return;
      }
    }
  };

  unsigned n = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t + 1 < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (std::exception_ptr& failure : failures)
    if (failure) std::rethrow_exception(failure);

  if (format == "json") {
    json out = json::array();
    for (RecipeRow& row : rows) out.push_back(std::move(row.js));
    std::cout << out.dump() << '\n';
  } else {
    for (const RecipeRow& row : rows) {
      std::cout << row.tsv;
      if (!row.raw) std::cout << '\n';
    }
  }
}

// ---- sync-plan -------------------------------------------------------------

void run_sync_plan(const std::string& packages, const std::string& repo_path,
                   const std::string& sysreqs, const std::string& exclude,
                   bool rebuild_dependents, const std::string& policy, const std::string& apply,
                   const std::string& format) {
  std::vector<PackageRecord> db = load_db(packages);
  RepoState repo = RepoState::load(slurp_file(repo_path));
  SyncOptions opts;
  opts.rebuild_dependents = rebuild_dependents;
  opts.cycle_policy = parse_policy(policy);
  SyncPlan plan = plan_sync(db, repo, load_exclusions(sysreqs, exclude), opts);

  if (format == "json") {
    json builds = json::array();
    for (const BuildItem& item : plan.builds)
      builds.push_back({{"name", item.name},
                        {"reason", build_reason_name(item.reason)},
                        {"batch", item.batch}});
    std::cout << json{{"removals", plan.removals},
                      {"builds", builds},
                      {"unchanged", plan.unchanged}}
                     .dump()
              << '\n';
  } else {
    std::cout << render_sync_plan(plan) << "UNCHANGED\t" << plan.unchanged << '\n';
  }

  if (!apply.empty()) write_file(apply, apply_sync_plan(repo, plan, db).save());
}

// ---- scrape-sysreqs --------------------------------------------------------

void run_scrape(const std::string& lexicon_path, const std::string& packages,
                const std::vector<std::string>& raw_args, const std::string& format) {
  Lexicon lexicon = Lexicon::load(slurp_file(lexicon_path));

  std::vector<std::pair<std::string, std::string>> inputs;  // label, raw text
  if (!packages.empty())
    for (const PackageRecord& rec : load_db(packages))
      if (!rec.system_requirements.empty()) inputs.emplace_back(rec.name, rec.system_requirements);
  for (const std::string& raw : raw_args) inputs.emplace_back("-", raw);

  json out = json::array();
  for (const auto& [label, raw] : inputs) {
    ScrapeResult result = scrape(raw, lexicon);
    if (format == "json") {
      json matched = json::object();
      for (const auto& [distro, sets] : result.matched)
        matched[distro] = {{"build", sets.build}, {"run", sets.run}};
      out.push_back({{"package", label},
                     {"matched", matched},
                     {"matched_tokens", result.matched_tokens},
                     {"unmatched", result.unmatched_tokens}});
      continue;
    }
    for (const auto& [distro, sets] : result.matched) {
      std::cout << "SYSREQ\t" << label << '\t' << distro << "\tbuild:"
                << join(std::vector<std::string>(sets.build.begin(), sets.build.end()), ",")
                << "\trun:"
                << join(std::vector<std::string>(sets.run.begin(), sets.run.end()), ",") << '\n';
    }
    for (const std::string& token : result.unmatched_tokens)
      std::cout << "UNMATCHED\t" << label << '\t' << token << '\n';
  }
  if (format == "json") std::cout << out.dump() << '\n';
}

// ---- serve -----------------------------------------------------------------

void run_serve(const std::string& socket_path, const std::string& catalog_path,
               const std::string& state_path, const std::string& mapping_path,
               const std::string& probes_csv, bool quiet) {
  FakePm backend(Catalog::load(slurp_file(catalog_path)));
  if (!state_path.empty()) {
    try {
      backend.load_state(slurp_file(state_path));
    } catch (const Error& e) {
      if (e.code() != Errc::IoError) throw;  // no state yet: start empty
    }
  }

  BridgeService::Options opts;
  opts.socket_path = socket_path;
  if (!mapping_path.empty()) opts.mapping = load_mapping(slurp_file(mapping_path));
  if (!probes_csv.empty())
    for (const std::string& probe : split(probes_csv, ','))
      if (!trim(probe).empty()) opts.probes.emplace_back(trim(probe));
  if (!quiet) opts.log = [](const std::string& line) { std::cerr << line << '\n'; };

  // The service owns worker threads; block signals first so they all inherit
  // the mask and sigwait below is the only consumer.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  BridgeService service(backend, std::move(opts));
  service.start();
  if (!quiet) std::cerr << "listening on " << socket_path << '\n';

  int sig = 0;
  sigwait(&set, &sig);
  service.stop();
  if (!state_path.empty()) write_file(state_path, backend.save_state());
}

// ---- discover / install / remove --------------------------------------------

struct ClientArgs {
  std::string socket_path;
  bool direct = false;
  std::string catalog;
  std::string state;
  std::string mapping_path;
  std::string config_path;
  std::string probes_csv;
  std::string format = "tsv";
};

ClientConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  try {
    return ClientConfig::load(slurp_file(path));
  } catch (const Error& e) {
    if (e.code() == Errc::IoError) return {};  // absent config: defaults
    throw;
  }
}

std::vector<std::string> parse_probes(const std::string& csv) {
  std::vector<std::string> probes;
  for (const std::string& probe : split(csv, ','))
    if (!trim(probe).empty()) probes.emplace_back(trim(probe));
  return probes.empty() ? default_probes() : probes;
}

Mapping direct_mapping(const ClientArgs& args, PackageBackend& backend) {
  if (!args.mapping_path.empty()) return load_mapping(slurp_file(args.mapping_path));
  return discover(backend, parse_probes(args.probes_csv)).mapping;
}

void run_discover(const ClientArgs& args) {
  std::string prefix;
  NameTransform transform = NameTransform::Identity;
  if (args.direct) {
    if (!load_config(args.config_path).enabled)
      throw Error(Errc::NoMappingFound, "bridge disabled by configuration");
    FakePm backend(Catalog::load(slurp_file(args.catalog)));
    DiscoverResult result = discover(backend, parse_probes(args.probes_csv));
    prefix = result.mapping.prefix;
    transform = result.mapping.transform;
  } else {
    BridgeClient client(args.socket_path, load_config(args.config_path));
    DiscoverInfo info = client.discover();
    prefix = info.prefix;
    transform = info.transform;
  }
  if (args.format == "json")
    std::cout << json{{"prefix", prefix}, {"transform", transform_name(transform)}}.dump() << '\n';
  else
    std::cout << "prefix\t" << prefix << "\ntransform\t" << transform_name(transform) << '\n';
}

void check_mode(const ClientArgs& args) {
  if (args.direct && args.catalog.empty())
    throw Error(Errc::InvalidRequest, "--direct needs --catalog");
  if (!args.direct && args.socket_path.empty())
    throw Error(Errc::InvalidRequest, "need --socket (or PKGBRIDGE_SOCKET), or --direct");
}

void emit_outcome(const char* verb, const std::vector<std::string>& affected,
                  const std::vector<std::string>& not_found, const std::string& format) {
  if (format == "json") {
    std::cout << json{{verb, affected}, {"not_found", not_found}}.dump() << '\n';
    return;
  }
  const char* tag = verb[0] == 'i' ? "INSTALLED" : "REMOVED";
  for (const std::string& name : affected) std::cout << tag << '\t' << name << '\n';
  for (const std::string& name : not_found) std::cout << "NOT-FOUND\t" << name << '\n';
}

void run_op(const char* op, const ClientArgs& args, const std::vector<std::string>& names) {
  ProgressFn progress = [](const std::string& line) { std::cerr << line << '\n'; };
  ClientConfig config = load_config(args.config_path);
  std::vector<std::string> affected;
  std::vector<std::string> not_found;

  if (!config.enabled) {
    not_found = names;  // local fallback; the service never hears about it
  } else if (args.direct) {
    FakePm backend(Catalog::load(slurp_file(args.catalog)));
    if (!args.state.empty()) {
      try {
        backend.load_state(slurp_file(args.state));
      } catch (const Error& e) {
        if (e.code() != Errc::IoError) throw;
      }
    }
    Mapping m = direct_mapping(args, backend);
    BridgeOutcome outcome = std::string(op) == "install"
                                ? bridge_install(backend, m, names, progress)
                                : bridge_remove(backend, m, names, progress);
    affected = std::move(outcome.affected);
    not_found = std::move(outcome.not_found);
    if (!args.state.empty()) write_file(args.state, backend.save_state());
  } else {
    BridgeClient client(args.socket_path, config);
    if (std::string(op) == "install") {
      InstallResult result = client.install(names, progress);
      affected = std::move(result.installed);
      not_found = std::move(result.not_found);
    } else {
      RemoveResult result = client.remove(names, progress);
      affected = std::move(result.removed);
      not_found = std::move(result.not_found);
    }
  }
  emit_outcome(std::string(op) == "install" ? "installed" : "removed", affected, not_found,
               args.format);
}

// ---- enable / disable --------------------------------------------------------

void run_toggle(const std::string& config_path, bool enabled) {
  ClientConfig config = load_config(config_path);
  config.enabled = enabled;
  write_file(config_path, config.save());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bridge between an R package index and a system package manager"};
  app.require_subcommand(1);

  std::string format = "tsv";

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Compilation footprint of a package index");
  std::string stats_packages;
  stats_cmd->add_option("--packages", stats_packages, "PACKAGES index file")->required();
  stats_cmd->add_option("--format", format, "tsv or json");

  // batches
  auto* batches_cmd = app.add_subcommand("batches", "Build order as dependency batches");
  std::string b_packages, b_sysreqs, b_exclude, b_policy = "collapse";
  batches_cmd->add_option("--packages", b_packages, "PACKAGES index file")->required();
  batches_cmd->add_option("--sysreqs", b_sysreqs, "system requirements database")
      ->envname("PKGBRIDGE_SYSREQS");
  batches_cmd->add_option("--exclude", b_exclude, "extra exclusions, name<TAB>reason")
      ->envname("PKGBRIDGE_EXCLUDE");
  batches_cmd->add_option("--policy", b_policy, "cycle policy: collapse or reject");
  batches_cmd->add_option("--format", format, "tsv or json");

  // recipe
  auto* recipe_cmd = app.add_subcommand("recipe", "Render build recipes from a template");
  std::string r_packages, r_template, r_sysreqs, r_out, r_transform = "identity";
  unsigned r_jobs = 1;
  RecipeOptions r_opts;
  std::vector<std::string> r_names;
  recipe_cmd->add_option("--packages", r_packages, "PACKAGES index file")->required();
  recipe_cmd->add_option("--template", r_template, "recipe template file")->required();
  recipe_cmd->add_option("--sysreqs", r_sysreqs, "system requirements database")
      ->envname("PKGBRIDGE_SYSREQS");
  recipe_cmd->add_option("--out", r_out, "output directory (default: recipe text to stdout)");
  recipe_cmd->add_option("--jobs", r_jobs, "parallel workers");
  recipe_cmd->add_option("--distro", r_opts.distro, "target distribution id");
  recipe_cmd->add_option("--prefix", r_opts.prefix, "system package name prefix");
  recipe_cmd->add_option("--transform", r_transform, "identity or lowercase");
  recipe_cmd->add_option("--release", r_opts.release, "release number");
  recipe_cmd->add_option("names", r_names, "packages to render (default: all)");
  recipe_cmd->add_option("--format", format, "tsv or json");

  // sync-plan
  auto* sync_cmd = app.add_subcommand("sync-plan", "Diff upstream against the binary repository");
  std::string s_packages, s_repo, s_sysreqs, s_exclude, s_policy = "collapse", s_apply;
  bool s_rebuild = false;
  sync_cmd->add_option("--packages", s_packages, "PACKAGES index file")->required();
  sync_cmd->add_option("--repo", s_repo, "repository state file")->required();
  sync_cmd->add_option("--sysreqs", s_sysreqs, "system requirements database")
      ->envname("PKGBRIDGE_SYSREQS");
  sync_cmd->add_option("--exclude", s_exclude, "extra exclusions, name<TAB>reason")
      ->envname("PKGBRIDGE_EXCLUDE");
  sync_cmd->add_flag("--rebuild-dependents", s_rebuild, "rebuild dependents of updated packages");
  sync_cmd->add_option("--policy", s_policy, "cycle policy: collapse or reject");
  sync_cmd->add_option("--apply", s_apply, "write the post-plan repository state here");
  sync_cmd->add_option("--format", format, "tsv or json");

  // scrape-sysreqs
  auto* scrape_cmd = app.add_subcommand("scrape-sysreqs", "Match raw SystemRequirements text");
  std::string sc_lexicon, sc_packages;
  std::vector<std::string> sc_raw;
  scrape_cmd->add_option("--lexicon", sc_lexicon, "pattern lexicon file")->required();
  scrape_cmd->add_option("--packages", sc_packages, "PACKAGES index file");
  scrape_cmd->add_option("text", sc_raw, "raw requirement strings");
  scrape_cmd->add_option("--format", format, "tsv or json");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the bridge service on a Unix socket");
  std::string sv_socket, sv_catalog, sv_state, sv_mapping, sv_probes;
  bool sv_quiet = false;
  serve_cmd->add_option("--socket", sv_socket, "socket path")
      ->envname("PKGBRIDGE_SOCKET")
      ->required();
  serve_cmd->add_option("--catalog", sv_catalog, "backend package catalog")->required();
  serve_cmd->add_option("--state", sv_state, "backend state file, loaded and saved");
  serve_cmd->add_option("--mapping", sv_mapping, "mapping file; otherwise discovered");
  serve_cmd->add_option("--probes", sv_probes, "comma-separated discovery probes");
  serve_cmd->add_flag("--quiet", sv_quiet, "no audit log on stderr");

  // discover / install / remove
  ClientArgs c_args;
  std::vector<std::string> op_names;
  auto add_client_options = [&](CLI::App* cmd, bool with_names) {
    cmd->add_option("--socket", c_args.socket_path, "service socket path")
        ->envname("PKGBRIDGE_SOCKET");
    cmd->add_flag("--direct", c_args.direct, "run against the backend in-process");
    cmd->add_option("--catalog", c_args.catalog, "backend catalog (direct mode)");
    cmd->add_option("--state", c_args.state, "backend state file (direct mode)");
    cmd->add_option("--mapping", c_args.mapping_path, "mapping file (direct mode)");
    cmd->add_option("--probes", c_args.probes_csv, "comma-separated discovery probes");
    cmd->add_option("--config", c_args.config_path, "client configuration file");
    cmd->add_option("--format", c_args.format, "tsv or json");
    if (with_names) cmd->add_option("names", op_names, "R package names")->required();
  };
  auto* discover_cmd = app.add_subcommand("discover", "Report the name mapping in use");
  add_client_options(discover_cmd, false);
  auto* install_cmd = app.add_subcommand("install", "Install R packages as system packages");
  add_client_options(install_cmd, true);
  auto* remove_cmd = app.add_subcommand("remove", "Remove bridged system packages");
  add_client_options(remove_cmd, true);

  // enable / disable
  auto* enable_cmd = app.add_subcommand("enable", "Turn the bridge on for this user");
  auto* disable_cmd = app.add_subcommand("disable", "Turn the bridge off for this user");
  std::string toggle_config;
  enable_cmd->add_option("--config", toggle_config, "client configuration file")->required();
  disable_cmd->add_option("--config", toggle_config, "client configuration file")->required();

  try {
    app.parse(argc, argv);

    if (*stats_cmd) {
      run_stats(stats_packages, format);
    } else if (*batches_cmd) {
      run_batches(b_packages, b_sysreqs, b_exclude, b_policy, format);
    } else if (*recipe_cmd) {
      r_opts.transform = transform_or_throw(r_transform);
      run_recipe(r_packages, r_template, r_sysreqs, r_out, r_jobs, r_opts, r_names, format);
    } else if (*sync_cmd) {
      run_sync_plan(s_packages, s_repo, s_sysreqs, s_exclude, s_rebuild, s_policy, s_apply,
                    format);
    } else if (*scrape_cmd) {
      if (sc_packages.empty() && sc_raw.empty())
        throw Error(Errc::InvalidRequest, "need --packages or raw requirement text");
      run_scrape(sc_lexicon, sc_packages, sc_raw, format);
    } else if (*serve_cmd) {
      run_serve(sv_socket, sv_catalog, sv_state, sv_mapping, sv_probes, sv_quiet);
    } else if (*discover_cmd) {
      check_mode(c_args);
      run_discover(c_args);
    } else if (*install_cmd) {
      check_mode(c_args);
      run_op("install", c_args, op_names);
    } else if (*remove_cmd) {
      check_mode(c_args);
      run_op("remove", c_args, op_names);
    } else if (*enable_cmd) {
      run_toggle(toggle_config, true);
    } else if (*disable_cmd) {
      run_toggle(toggle_config, false);
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const pkgbridge::Error& e) {
    std::cerr << "pkgbridge: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "pkgbridge: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
