#pragma once

#include <sys/types.h>

#include <condition_variable>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pkgbridge/bridge.hpp"
#include "pkgbridge/connector.hpp"
#include "pkgbridge/mapping.hpp"
#include "pkgbridge/protocol.hpp"

namespace pkgbridge {

// Who asked for what, straight from the kernel's view of the peer.
struct AuditRecord {
  unsigned long long request_id = 0;
  pid_t pid = -1;
  std::string op;
};

// Listens on a Unix stream socket and bridges requests to one backend.
// One thread per connection; transactions run strictly one at a time in
// request-arrival order. A malformed line gets an error response and the
// connection lives on — only EOF or a dead peer closes it.
class BridgeService {
public:
  struct Options {
    std::string socket_path;
    std::optional<Mapping> mapping;   // preset; nullopt -> discover on first need
    std::vector<std::string> probes;  // for that discovery; empty -> default_probes()
    std::function<void(const std::string&)> log;  // one line per audited request
  };

  BridgeService(PackageBackend& backend, Options opts);
  ~BridgeService();  // stops if still running

  BridgeService(const BridgeService&) = delete;
  BridgeService& operator=(const BridgeService&) = delete;

  // Claims the socket path (an existing file is replaced) and starts
  // accepting. Throws Error(SocketError).
  void start();
  // Idempotent: wakes the acceptor, shuts down every live connection, joins
  // all threads, unlinks the socket.
  void stop();

  bool running() const noexcept { return running_; }
  const std::string& socket_path() const noexcept { return opts_.socket_path; }
  std::vector<AuditRecord> audit_log() const;

private:
  void accept_loop();
  void serve_connection(int fd, pid_t peer);
  BridgeMessage handle_request(const BridgeMessage& request, pid_t peer, int fd);
  const Mapping& effective_mapping();

  PackageBackend& backend_;
  Options opts_;

  int listen_fd_ = -1;
  int stop_pipe_[2] = {-1, -1};
  std::thread acceptor_;
  bool running_ = false;

  mutable std::mutex state_mutex_;
  std::vector<std::thread> workers_;
  std::vector<int> live_fds_;
  std::vector<AuditRecord> audit_;
  std::optional<Mapping> discovered_;

  // Ticket lock: requests execute in the exact order they finished
  // arriving, whichever connection carried them.
  std::mutex ticket_mutex_;
  std::condition_variable ticket_cv_;
  unsigned long long next_ticket_ = 0;
  unsigned long long now_serving_ = 0;
};

}  // namespace pkgbridge
