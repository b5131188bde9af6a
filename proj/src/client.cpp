#include "pkgbridge/client.hpp"

#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "pkgbridge/errors.hpp"
#include "pkgbridge/util.hpp"

namespace pkgbridge {

ClientConfig ClientConfig::load(std::string_view text) {
  ClientConfig config;
  size_t lineno = 0;
  for (const std::string& line : split_lines(text)) {
    ++lineno;
    std::string_view stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    size_t eq = stripped.find('=');
    if (eq == std::string_view::npos)
      throw Error(Errc::MalformedLine,
                  "config line " + std::to_string(lineno) + ": expected key=value");
    std::string key(trim(stripped.substr(0, eq)));
    std::string value(trim(stripped.substr(eq + 1)));
    if (key == "enabled") {
      if (value == "true")
        config.enabled = true;
      else if (value == "false")
        config.enabled = false;
      else
        throw Error(Errc::MalformedLine,
                    "config line " + std::to_string(lineno) + ": enabled must be true or false");
    } else {
      throw Error(Errc::MalformedLine,
                  "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return config;
}

std::string ClientConfig::save() const {
  return std::string("enabled=") + (enabled ? "true" : "false") + "\n";
}

BridgeClient::BridgeClient(std::string socket_path, ClientConfig config)
    : socket_path_(std::move(socket_path)), config_(config) {}

BridgeClient::~BridgeClient() {
  if (fd_ >= 0) ::close(fd_);
}

void BridgeClient::ensure_connected() {
  if (fd_ >= 0) return;
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  if (socket_path_.empty() || socket_path_.size() >= sizeof(addr.sun_path))
    throw Error(Errc::SocketError, "bad socket path: '" + socket_path_ + "'");
  std::memcpy(addr.sun_path, socket_path_.c_str(), socket_path_.size());

  fd_ = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (fd_ < 0) throw Error(Errc::SocketError, std::string("socket: ") + std::strerror(errno));
  if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
    int saved = errno;
    ::close(fd_);
    fd_ = -1;
    throw Error(Errc::SocketError,
                "connect " + socket_path_ + ": " + std::strerror(saved));
  }
}

BridgeMessage BridgeClient::roundtrip(BridgeMessage request, const ProgressFn& progress) {
  ensure_connected();
  request.kind = MessageKind::Request;
  request.request_id = ++counter_;

  std::string framed = encode_message(request) + '\n';
  size_t off = 0;
  while (off < framed.size()) {
    ssize_t n = ::send(fd_, framed.data() + off, framed.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(Errc::SocketError, std::string("send: ") + std::strerror(errno));
    }
    off += static_cast<size_t>(n);
  }

  char chunk[4096];
  for (;;) {
    size_t newline;
    while ((newline = buffer_.find('\n')) == std::string::npos) {
      ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
      if (n == 0) throw Error(Errc::SocketError, "service closed the connection");
      if (n < 0) {
        if (errno == EINTR) continue;
        throw Error(Errc::SocketError, std::string("recv: ") + std::strerror(errno));
      }
      buffer_.append(chunk, static_cast<size_t>(n));
    }
    std::string line = buffer_.substr(0, newline);
    buffer_.erase(0, newline + 1);

    BridgeMessage frame = decode_message(line);
    if (frame.kind == MessageKind::Progress) {
      if (frame.request_id != request.request_id)
        throw Error(Errc::MalformedMessage, "progress for a different request");
      if (progress) progress(frame.text);
      continue;
    }
    if (frame.kind != MessageKind::Response)
      throw Error(Errc::MalformedMessage, "unexpected frame kind from service");
    if (frame.request_id && frame.request_id != request.request_id)
      throw Error(Errc::MalformedMessage, "response for a different request");

    if (frame.status == "ok") return frame;
    if (frame.status != "error")
      throw Error(Errc::MalformedMessage, "response status must be ok or error");
    // Rebuild the service-side Error from its "Name: message" rendering.
    std::string name = frame.error;
    std::string message = frame.error;
    size_t colon = frame.error.find(": ");
    if (colon != std::string::npos) {
      name = frame.error.substr(0, colon);
      message = frame.error.substr(colon + 2);
    }
    std::optional<Errc> code = errc_from_name(name);
    throw Error(code.value_or(Errc::BackendFailure), code ? message : frame.error);
  }
}

DiscoverInfo BridgeClient::discover() {
  if (!config_.enabled)
    throw Error(Errc::NoMappingFound, "bridge disabled by configuration");
  BridgeMessage request;
  request.op = "discover";
  BridgeMessage response = roundtrip(std::move(request), {});
  if (response.args.size() != 2)
    throw Error(Errc::MalformedMessage, "discover response must carry prefix and transform");
  std::optional<NameTransform> transform = parse_transform(response.args[1]);
  if (!transform)
    throw Error(Errc::MalformedMessage, "unknown transform '" + response.args[1] + "'");
  return {response.args[0], *transform};
}

InstallResult BridgeClient::install(const std::vector<std::string>& r_names,
                                    const ProgressFn& progress) {
  if (r_names.empty()) throw Error(Errc::InvalidRequest, "no packages named in request");
  if (!config_.enabled) return {{}, r_names};  // everything falls back to source
  BridgeMessage request;
  request.op = "install";
  request.args = r_names;
  BridgeMessage response = roundtrip(std::move(request), progress);
  return {response.args, response.not_found};
}

RemoveResult BridgeClient::remove(const std::vector<std::string>& r_names,
                                  const ProgressFn& progress) {
  if (r_names.empty()) throw Error(Errc::InvalidRequest, "no packages named in request");
  if (!config_.enabled) return {{}, r_names};
  BridgeMessage request;
  request.op = "remove";
  request.args = r_names;
  BridgeMessage response = roundtrip(std::move(request), progress);
  return {response.args, response.not_found};
}

}  // namespace pkgbridge
