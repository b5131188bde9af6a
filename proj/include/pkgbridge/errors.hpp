#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pkgbridge {

enum class Errc {
  // metadata
  MalformedField,
  DuplicateField,
  MissingField,
  BadConstraint,
  BadVersion,
  BadName,
  SelfDependency,
  // depgraph
  DuplicatePackage,
  CycleDetected,
  // sysreqs, recipegen
  MalformedLine,
  UnresolvedPlaceholder,
  ExcludedPackage,
  NeedsCuration,
  // bridge, backend
  NoMappingFound,
  InvalidRequest,
  MalformedMessage,
  BackendFailure,
  UnknownPackage,
  ReentrantCall,
  SocketError,
  IoError,
};

const char* errc_name(Errc code) noexcept;
std::optional<Errc> errc_from_name(std::string_view name) noexcept;

// Domain error. Soft outcomes (not_found, Unknown, Excluded lookups) are
// data, not exceptions; Error is for contract violations and hard failures.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}
  Error(Errc code, const std::string& message, std::vector<std::string> details)
      : Error(code, message) {
    details_ = std::move(details);
  }

  Errc code() const noexcept { return code_; }
  // Extra payload, e.g. the members of a detected cycle.
  const std::vector<std::string>& details() const noexcept { return details_; }

private:
  Errc code_;
  std::vector<std::string> details_;
};

}  // namespace pkgbridge
