#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pkgbridge {

enum class MessageKind { Request, Progress, Response };

const char* message_kind_name(MessageKind kind) noexcept;  // "request" etc.

// One frame of the newline-delimited JSON protocol. The field set is fixed;
// anything else on the wire is rejected. Which fields carry meaning depends
// on the kind:
//   Request:  request_id, op ("discover" | "install" | "remove"), args
//   Progress: request_id, text
//   Response: request_id, status ("ok" | "error"), args (payload),
//             not_found, error
// Progress and Response frames echo the id of the request they answer. The
// id is absent only in an error response to a frame too broken to carry one.
struct BridgeMessage {
  MessageKind kind = MessageKind::Request;
  std::optional<unsigned long long> request_id;
  std::string op;
  std::vector<std::string> args;
  std::string text;
  std::string status;
  std::vector<std::string> not_found;
  std::string error;
  bool operator==(const BridgeMessage&) const = default;
};

// Single line of JSON, no trailing newline, keys sorted; empty optional
// fields are omitted. decode(encode(m)) == m.
std::string encode_message(const BridgeMessage& m);

// Strict: unknown keys, wrong types, or a missing/unknown kind all throw
// Error(MalformedMessage).
BridgeMessage decode_message(std::string_view line);

}  // namespace pkgbridge
