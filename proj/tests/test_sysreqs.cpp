#include <doctest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "pkgbridge/errors.hpp"
#include "pkgbridge/sysreqs.hpp"

using namespace pkgbridge;

TEST_CASE("the curated database fixture loads") {
  SysreqsDB db = SysreqsDB::load(testutil::read_fixture("sysreqs.tsv"));
  CHECK(db.version == 1);
  REQUIRE(db.entries.size() == 3);

  const SysreqsEntry* units = db.find("units");
  REQUIRE(units);
  REQUIRE(units->targets.count("fedora"));
  CHECK(units->targets.at("fedora").build == std::set<std::string>{"udunits2-devel"});
  CHECK(units->targets.at("fedora").run == std::set<std::string>{"udunits2"});
  CHECK(units->targets.count("debian"));
  CHECK_FALSE(units->excluded.has_value());

  const SysreqsEntry* gifski = db.find("gifski");
  REQUIRE(gifski);
  REQUIRE(gifski->excluded.has_value());
  CHECK(*gifski->excluded == "needs network at build");
  CHECK(gifski->targets.empty());

  CHECK(db.find("nonexistent") == nullptr);
}

TEST_CASE("lookups split by phase and fall through to Unknown") {
  SysreqsDB db = SysreqsDB::load(testutil::read_fixture("sysreqs.tsv"));

  SysreqsLookup build = requires_for(db, "units", "fedora", Phase::Build);
  CHECK(build.kind == SysreqsLookup::Kind::Found);
  CHECK(build.packages == std::set<std::string>{"udunits2-devel"});

  SysreqsLookup run = requires_for(db, "units", "fedora", Phase::Run);
  CHECK(run.packages == std::set<std::string>{"udunits2"});

  SysreqsLookup excluded = requires_for(db, "gifski", "fedora", Phase::Build);
  CHECK(excluded.kind == SysreqsLookup::Kind::Excluded);
  CHECK(excluded.detail == "needs network at build");

  SysreqsLookup unknown = requires_for(db, "ggplot2", "fedora", Phase::Build);
  CHECK(unknown.kind == SysreqsLookup::Kind::Unknown);
}

TEST_CASE("a wildcard target applies everywhere and unions with exact rows") {
  SysreqsDB db = SysreqsDB::load(
      "pkg\t*\tbuild:cmake\trun:libfoo\n"
      "pkg\tfedora\tbuild:foo-devel\n");
  SysreqsLookup fedora = requires_for(db, "pkg", "fedora", Phase::Build);
  CHECK(fedora.packages == std::set<std::string>{"cmake", "foo-devel"});
  SysreqsLookup debian = requires_for(db, "pkg", "debian", Phase::Build);
  CHECK(debian.packages == std::set<std::string>{"cmake"});

  PhaseSets sets = entry_targets(*db.find("pkg"), "fedora");
  CHECK(sets.build == std::set<std::string>{"cmake", "foo-devel"});
  CHECK(sets.run == std::set<std::string>{"libfoo"});
}

TEST_CASE("save emits a normalized file that loads back identically") {
  SysreqsDB db = SysreqsDB::load(testutil::read_fixture("sysreqs.tsv"));
  SysreqsDB reloaded = SysreqsDB::load(db.save());
  CHECK(reloaded.entries == db.entries);
  CHECK(reloaded.version == db.version);
  // normalization is a fixed point
  CHECK(reloaded.save() == db.save());
}

TEST_CASE("database round-trip holds on randomized content") {
  std::mt19937_64 rng(0xc0ffee);
  auto word = [&](const char* stem, int i) { return std::string(stem) + std::to_string(i); };

  for (int iter = 0; iter < 300; ++iter) {
    SysreqsDB db;
    db.version = static_cast<long long>(rng() % 100);
    int npkgs = 1 + static_cast<int>(rng() % 6);
    for (int p = 0; p < npkgs; ++p) {
      SysreqsEntry entry;
      entry.r_package = word("pkg", p);
      if (rng() % 5 == 0) {
        entry.excluded = "reason " + std::to_string(rng() % 10);
      } else {
        int ntargets = 1 + static_cast<int>(rng() % 3);
        for (int t = 0; t < ntargets; ++t) {
          std::string distro = t == 0 && (rng() % 2) ? "*" : word("distro", t);
          PhaseSets sets;
          int nb = static_cast<int>(rng() % 3), nr = static_cast<int>(rng() % 3);
          for (int i = 0; i < nb; ++i) sets.build.insert(word("b", static_cast<int>(rng() % 8)));
          for (int i = 0; i < nr; ++i) sets.run.insert(word("r", static_cast<int>(rng() % 8)));
          if (sets.build.empty() && sets.run.empty()) sets.build.insert("x");
          entry.targets[distro] = sets;
        }
      }
      db.entries[entry.r_package] = entry;
    }
    SysreqsDB reloaded = SysreqsDB::load(db.save());
    REQUIRE(reloaded.entries == db.entries);
    REQUIRE(reloaded.version == db.version);
  }
}

TEST_CASE("malformed database lines carry their line number") {
  for (const char* bad : {
           "units\n",                             // no distro column
           "units\tfedora\n",                     // no tag columns
           "units\tfedora\tbogus:x\n",            // unknown tag
           "units\tfedora\tbuild:\n",             // empty package list
           "gifski\t*\tEXCLUDED:why\tbuild:x\n",  // exclusion with targets
       }) {
    CHECK_THROWS_AS(SysreqsDB::load(bad), Error);
  }
  // a repeated phase tag just unions
  CHECK(SysreqsDB::load("u\tfedora\tbuild:a\tbuild:b\n").find("u")->targets.at("fedora").build ==
        std::set<std::string>{"a", "b"});
  try {
    SysreqsDB::load("ok\tfedora\tbuild:x\nbroken\n");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MalformedLine);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("tokenizer strips parentheticals and version qualifiers") {
  CHECK(tokenize_sysreqs("udunits-2") == std::vector<std::string>{"udunits-2"});
  CHECK(tokenize_sysreqs("GNU make, C++17") == std::vector<std::string>{"GNU make", "C++17"});
  CHECK(tokenize_sysreqs("libxml2 (>= 2.9.1)") == std::vector<std::string>{"libxml2"});
  CHECK(tokenize_sysreqs("openssl >= 1.1") == std::vector<std::string>{"openssl"});
  CHECK(tokenize_sysreqs("Cargo (Rust crate dependencies)") ==
        std::vector<std::string>{"Cargo"});
  CHECK(tokenize_sysreqs("  spaced   out  ") == std::vector<std::string>{"spaced out"});
  CHECK(tokenize_sysreqs("").empty());
  CHECK(tokenize_sysreqs(" , , ").empty());
}

TEST_CASE("scraping is total: every token lands in matched or unmatched") {
  Lexicon lexicon = Lexicon::load(testutil::read_fixture("lexicon.tsv"));

  ScrapeResult hit = scrape("udunits-2", lexicon);
  CHECK(hit.matched_tokens == std::vector<std::string>{"udunits-2"});
  CHECK(hit.unmatched_tokens.empty());
  REQUIRE(hit.matched.count("fedora"));
  CHECK(hit.matched.at("fedora").build == std::set<std::string>{"udunits2-devel"});
  CHECK(hit.matched.at("fedora").run == std::set<std::string>{"udunits2"});
  CHECK(hit.matched.at("debian").build == std::set<std::string>{"libudunits2-dev"});

  ScrapeResult miss = scrape("QuantLib", lexicon);
  CHECK(miss.matched_tokens.empty());
  CHECK(miss.unmatched_tokens == std::vector<std::string>{"QuantLib"});

  ScrapeResult mixed = scrape("udunits-2, QuantLib, GNU make", lexicon);
  CHECK(mixed.matched_tokens == std::vector<std::string>{"udunits-2", "GNU make"});
  CHECK(mixed.unmatched_tokens == std::vector<std::string>{"QuantLib"});
  CHECK(mixed.matched.at("*").build == std::set<std::string>{"make"});
}

TEST_CASE("glob matching ignores case and spans whole tokens") {
  Lexicon lexicon = Lexicon::load("udunits*\tfedora\tbuild:udunits2-devel\n");
  CHECK(scrape("UDUNITS-2", lexicon).matched_tokens.size() == 1);
  CHECK(scrape("Udunits", lexicon).matched_tokens.size() == 1);
  // substring alone is not a match: pattern has no leading '*'
  CHECK(scrape("libudunits", lexicon).matched_tokens.empty());

  Lexicon lexicon2 = Lexicon::load("*cargo*\tfedora\tbuild:cargo\n");
  CHECK(scrape("Cargo (Rust crate dependencies)", lexicon2).matched_tokens ==
        std::vector<std::string>{"Cargo"});
}

TEST_CASE("first lexicon rule wins; later rules never stack") {
  Lexicon lexicon = Lexicon::load(
      "lib*\tfedora\tbuild:generic\n"
      "libcurl*\tfedora\tbuild:libcurl-devel\n");
  // rules are kept sorted by pattern, so "lib*" precedes "libcurl*"
  ScrapeResult result = scrape("libcurl", lexicon);
  CHECK(result.matched.at("fedora").build == std::set<std::string>{"generic"});
}

TEST_CASE("scraping random token soups never drops a token") {
  Lexicon lexicon = Lexicon::load(testutil::read_fixture("lexicon.tsv"));
  std::mt19937_64 rng(99);
  const std::vector<std::string> vocabulary = {
      "udunits-2", "libcurl", "GNU make", "cargo", "QuantLib", "Java", "openssl", "pandoc"};
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::string> tokens;
    std::string raw;
    size_t n = 1 + rng() % 5;
    for (size_t i = 0; i < n; ++i) {
      const std::string& pick = vocabulary[rng() % vocabulary.size()];
      tokens.push_back(pick);
      if (i) raw += ", ";
      raw += pick;
    }
    ScrapeResult result = scrape(raw, lexicon);
    REQUIRE(result.matched_tokens.size() + result.unmatched_tokens.size() == tokens.size());
    // order and multiplicity preserved across the split
    std::vector<std::string> merged;
    size_t mi = 0, ui = 0;
    for (const std::string& token : tokens) {
      if (mi < result.matched_tokens.size() && result.matched_tokens[mi] == token)
        ++mi, merged.push_back(token);
      else if (ui < result.unmatched_tokens.size() && result.unmatched_tokens[ui] == token)
        ++ui, merged.push_back(token);
    }
    REQUIRE(merged == tokens);
  }
}
