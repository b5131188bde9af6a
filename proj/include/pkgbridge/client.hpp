#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pkgbridge/connector.hpp"
#include "pkgbridge/names.hpp"
#include "pkgbridge/protocol.hpp"

namespace pkgbridge {

// User-side switch. A disabled client answers every request locally with
// "not found" and never opens the socket, so callers fall back to source
// builds with no service anywhere in sight.
struct ClientConfig {
  bool enabled = true;

  static ClientConfig load(std::string_view text);  // key=value lines, '#' comments
  std::string save() const;
  bool operator==(const ClientConfig&) const = default;
};

struct InstallResult {
  std::vector<std::string> installed;  // system names, transaction order
  std::vector<std::string> not_found;  // R names
  bool operator==(const InstallResult&) const = default;
};

struct RemoveResult {
  std::vector<std::string> removed;
  std::vector<std::string> not_found;
  bool operator==(const RemoveResult&) const = default;
};

struct DiscoverInfo {
  std::string prefix;
  NameTransform transform = NameTransform::Identity;
  bool operator==(const DiscoverInfo&) const = default;
};

// Talks the line protocol over a Unix stream socket. Connects lazily on the
// first request; one request at a time, progress frames stream to the
// callback until the response arrives. An error response is rethrown as the
// Error it was on the service side.
class BridgeClient {
public:
  explicit BridgeClient(std::string socket_path, ClientConfig config = {});
  ~BridgeClient();

  BridgeClient(const BridgeClient&) = delete;
  BridgeClient& operator=(const BridgeClient&) = delete;

  DiscoverInfo discover();  // disabled -> Error(NoMappingFound)
  InstallResult install(const std::vector<std::string>& r_names,
                        const ProgressFn& progress = {});
  RemoveResult remove(const std::vector<std::string>& r_names, const ProgressFn& progress = {});

  bool enabled() const noexcept { return config_.enabled; }

private:
  BridgeMessage roundtrip(BridgeMessage request, const ProgressFn& progress);
  void ensure_connected();

  std::string socket_path_;
  ClientConfig config_;
  int fd_ = -1;
  std::string buffer_;
  unsigned long long counter_ = 0;
};

}  // namespace pkgbridge
