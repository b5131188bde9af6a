#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace testutil {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(PKGBRIDGE_FIXTURES_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string read_fixture(const std::string& name) { return read_file(fixture(name)); }

// Self-cleaning scratch directory.
struct TempDir {
  std::filesystem::path dir;

  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "pkgbridge-test-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) std::abort();
    dir = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path path(const std::string& name) const { return dir / name; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    std::filesystem::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
};

}  // namespace testutil
