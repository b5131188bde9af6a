#include "pkgbridge/service.hpp"

#include <fcntl.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "pkgbridge/errors.hpp"
#include "pkgbridge/util.hpp"

namespace pkgbridge {

namespace {

[[noreturn]] void socket_error(const std::string& what) {
  throw Error(Errc::SocketError, what + ": " + std::strerror(errno));
}

void send_line(int fd, const std::string& payload) {
  std::string framed = payload + '\n';
  size_t off = 0;
  while (off < framed.size()) {
    ssize_t n = ::send(fd, framed.data() + off, framed.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      socket_error("send");
    }
    off += static_cast<size_t>(n);
  }
}

// Strict arrival-order execution: a request runs only when every request
// ticketed before it has finished.
struct TicketGuard {
  TicketGuard(std::mutex& mutex, std::condition_variable& cv, unsigned long long& next,
              unsigned long long& serving)
      : mutex_(mutex), cv_(cv), serving_(serving) {
    std::unique_lock<std::mutex> lock(mutex_);
    unsigned long long ticket = next++;
    cv_.wait(lock, [&] { return serving_ == ticket; });
  }
  ~TicketGuard() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      ++serving_;
    }
    cv_.notify_all();
  }
  std::mutex& mutex_;
  std::condition_variable& cv_;
  unsigned long long& serving_;
};

}  // namespace

BridgeService::BridgeService(PackageBackend& backend, Options opts)
    : backend_(backend), opts_(std::move(opts)) {}

BridgeService::~BridgeService() { stop(); }

void BridgeService::start() {
  if (running_) return;
  if (opts_.socket_path.empty()) throw Error(Errc::SocketError, "no socket path configured");

  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  if (opts_.socket_path.size() >= sizeof(addr.sun_path))
    throw Error(Errc::SocketError, "socket path too long: " + opts_.socket_path);
  std::memcpy(addr.sun_path, opts_.socket_path.c_str(), opts_.socket_path.size());

  listen_fd_ = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (listen_fd_ < 0) socket_error("socket");
  ::unlink(opts_.socket_path.c_str());
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
    int saved = errno;
    ::close(listen_fd_);
    listen_fd_ = -1;
    errno = saved;
    socket_error("bind " + opts_.socket_path);
  }
  if (::listen(listen_fd_, 64) < 0 || ::pipe2(stop_pipe_, O_CLOEXEC) < 0) {
    int saved = errno;
    ::close(listen_fd_);
    listen_fd_ = -1;
    ::unlink(opts_.socket_path.c_str());
    errno = saved;
    socket_error("listen " + opts_.socket_path);
  }
  running_ = true;
  acceptor_ = std::thread(&BridgeService::accept_loop, this);
}

void BridgeService::stop() {
  if (!running_) return;
  running_ = false;
  char byte = 0;
  (void)!::write(stop_pipe_[1], &byte, 1);
  acceptor_.join();

  {
    std::lock_guard<std::mutex> lock(state_mutex_);
    for (int fd : live_fds_) ::shutdown(fd, SHUT_RDWR);
  }
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(state_mutex_);
    workers.swap(workers_);
  }
  for (std::thread& worker : workers) worker.join();

  ::close(listen_fd_);
  listen_fd_ = -1;
  ::close(stop_pipe_[0]);
  ::close(stop_pipe_[1]);
  stop_pipe_[0] = stop_pipe_[1] = -1;
  ::unlink(opts_.socket_path.c_str());
}

std::vector<AuditRecord> BridgeService::audit_log() const {
  std::lock_guard<std::mutex> lock(state_mutex_);
  return audit_;
}

void BridgeService::accept_loop() {
  for (;;) {
    pollfd fds[2] = {{listen_fd_, POLLIN, 0}, {stop_pipe_[0], POLLIN, 0}};
    int rc = ::poll(fds, 2, -1);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (fds[1].revents) break;
    if (!(fds[0].revents & POLLIN)) continue;
    int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd < 0) {
      if (errno == EINTR || errno == ECONNABORTED) continue;
      break;
    }
    ucred cred{};
    socklen_t cred_len = sizeof(cred);
    pid_t peer = -1;
    if (::getsockopt(fd, SOL_SOCKET, SO_PEERCRED, &cred, &cred_len) == 0) peer = cred.pid;

    std::lock_guard<std::mutex> lock(state_mutex_);
    live_fds_.push_back(fd);
    workers_.emplace_back(&BridgeService::serve_connection, this, fd, peer);
  }
}

void BridgeService::serve_connection(int fd, pid_t peer) {
  std::string buffer;
  char chunk[4096];
  bool open = true;
  while (open) {
    size_t newline;
    while ((newline = buffer.find('\n')) == std::string::npos) {
      ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
      if (n <= 0) {
        open = false;
        break;
      }
      buffer.append(chunk, static_cast<size_t>(n));
    }
    if (!open) break;
    std::string line = buffer.substr(0, newline);
    buffer.erase(0, newline + 1);

    std::optional<unsigned long long> request_id;
    BridgeMessage response;
    try {
      BridgeMessage request = decode_message(line);
      request_id = request.request_id;
      if (request.kind != MessageKind::Request)
        throw Error(Errc::MalformedMessage, "expected a request frame");
      if (!request.request_id)
        throw Error(Errc::InvalidRequest, "request carries no request_id");
      response = handle_request(request, peer, fd);
    } catch (const Error& e) {
      response = {};
      response.status = "error";
      response.error = e.what();
    } catch (const std::exception& e) {
      response = {};
      response.status = "error";
      response.error = std::string(errc_name(Errc::BackendFailure)) + ": " + e.what();
    }
    response.kind = MessageKind::Response;
    response.request_id = request_id;
    try {
      send_line(fd, encode_message(response));
    } catch (const Error&) {
      break;  // peer is gone
    }
  }
  {
    // Unregister before close: the number may be reused the moment it is
    // free, and stop() must never shut down someone else's descriptor.
    std::lock_guard<std::mutex> lock(state_mutex_);
    live_fds_.erase(std::find(live_fds_.begin(), live_fds_.end(), fd));
  }
  ::close(fd);
}

const Mapping& BridgeService::effective_mapping() {
  // Only ever called with the ticket held, so the cache needs no lock.
  if (opts_.mapping) return *opts_.mapping;
  if (!discovered_) {
    std::vector<std::string> probes = opts_.probes.empty() ? default_probes() : opts_.probes;
    discovered_ = discover(backend_, probes).mapping;
  }
  return *discovered_;
}

BridgeMessage BridgeService::handle_request(const BridgeMessage& request, pid_t peer, int fd) {
  if (request.op != "discover" && request.op != "install" && request.op != "remove")
    throw Error(Errc::InvalidRequest, "unknown op '" + request.op + "'");

  TicketGuard ticket(ticket_mutex_, ticket_cv_, next_ticket_, now_serving_);

  {
    std::lock_guard<std::mutex> lock(state_mutex_);
    audit_.push_back({*request.request_id, peer, request.op});
  }
  if (opts_.log)
    opts_.log("pid=" + std::to_string(peer) + " id=" + std::to_string(*request.request_id) +
              " op=" + request.op +
              (request.args.empty() ? std::string() : " args=" + join(request.args, ",")));

  BridgeMessage response;
  response.kind = MessageKind::Response;
  response.request_id = request.request_id;

  if (request.op == "discover") {
    const Mapping& m = effective_mapping();
    response.status = "ok";
    response.args = {m.prefix, transform_name(m.transform)};
    return response;
  }

  if (request.args.empty())
    throw Error(Errc::InvalidRequest, request.op + " needs at least one package name");

  const Mapping& m = effective_mapping();
  ProgressFn progress = [&](const std::string& text) {
    BridgeMessage frame;
    frame.kind = MessageKind::Progress;
    frame.request_id = request.request_id;
    frame.text = text;
    send_line(fd, encode_message(frame));
  };
  BridgeOutcome outcome = request.op == "install"
                              ? bridge_install(backend_, m, request.args, progress)
                              : bridge_remove(backend_, m, request.args, progress);
  response.status = "ok";
  response.args = outcome.affected;
  response.not_found = outcome.not_found;
  return response;
}

}  // namespace pkgbridge
