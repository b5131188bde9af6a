#include "pkgbridge/protocol.hpp"

#include <nlohmann/json.hpp>

#include "pkgbridge/errors.hpp"

namespace pkgbridge {

using nlohmann::json;

const char* message_kind_name(MessageKind kind) noexcept {
  switch (kind) {
    case MessageKind::Request:
      return "request";
    case MessageKind::Progress:
      return "progress";
    case MessageKind::Response:
      return "response";
  }
  return "request";
}

std::string encode_message(const BridgeMessage& m) {
  json j;
  j["kind"] = message_kind_name(m.kind);
  if (m.request_id) j["request_id"] = *m.request_id;
  if (!m.op.empty()) j["op"] = m.op;
  if (!m.args.empty()) j["args"] = m.args;
  if (!m.text.empty()) j["text"] = m.text;
  if (!m.status.empty()) j["status"] = m.status;
  if (!m.not_found.empty()) j["not_found"] = m.not_found;
  if (!m.error.empty()) j["error"] = m.error;
  return j.dump();
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(Errc::MalformedMessage, what);
}

std::string take_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return {};
  if (!it->is_string()) malformed(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::optional<unsigned long long> take_id(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  if (!it->is_number_unsigned()) malformed(std::string("field '") + key + "' must be an unsigned integer");
  return it->get<unsigned long long>();
}

std::vector<std::string> take_strings(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return {};
  if (!it->is_array()) malformed(std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const json& item : *it) {
    if (!item.is_string()) malformed(std::string("field '") + key + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

BridgeMessage decode_message(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) malformed("not valid JSON");
  if (!j.is_object()) malformed("frame must be a JSON object");

  static const char* const kKnown[] = {"kind",   "request_id", "op",        "args",
                                       "text",   "status",     "not_found", "error"};
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) malformed("unknown field '" + key + "'");
  }

  BridgeMessage m;
  std::string kind = take_string(j, "kind");
  if (kind == "request")
    m.kind = MessageKind::Request;
  else if (kind == "progress")
    m.kind = MessageKind::Progress;
  else if (kind == "response")
    m.kind = MessageKind::Response;
  else
    malformed("unknown kind '" + kind + "'");

  m.request_id = take_id(j, "request_id");
  m.op = take_string(j, "op");
  m.args = take_strings(j, "args");
  m.text = take_string(j, "text");
  m.status = take_string(j, "status");
  m.not_found = take_strings(j, "not_found");
  m.error = take_string(j, "error");
  return m;
}

}  // namespace pkgbridge
