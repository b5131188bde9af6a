#include "pkgbridge/errors.hpp"

namespace pkgbridge {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedField:
      return "MalformedField";
    case Errc::DuplicateField:
      return "DuplicateField";
    case Errc::MissingField:
      return "MissingField";
    case Errc::BadConstraint:
      return "BadConstraint";
    case Errc::BadVersion:
      return "BadVersion";
    case Errc::BadName:
      return "BadName";
    case Errc::SelfDependency:
      return "SelfDependency";
    case Errc::DuplicatePackage:
      return "DuplicatePackage";
    case Errc::CycleDetected:
      return "CycleDetected";
    case Errc::MalformedLine:
      return "MalformedLine";
    case Errc::UnresolvedPlaceholder:
      return "UnresolvedPlaceholder";
    case Errc::ExcludedPackage:
      return "ExcludedPackage";
    case Errc::NeedsCuration:
      return "NeedsCuration";
    case Errc::NoMappingFound:
      return "NoMappingFound";
    case Errc::InvalidRequest:
      return "InvalidRequest";
    case Errc::MalformedMessage:
      return "MalformedMessage";
    case Errc::BackendFailure:
      return "BackendFailure";
    case Errc::UnknownPackage:
      return "UnknownPackage";
    case Errc::ReentrantCall:
      return "ReentrantCall";
    case Errc::SocketError:
      return "SocketError";
    case Errc::IoError:
      return "IoError";
  }
  return "Error";
}

std::optional<Errc> errc_from_name(std::string_view name) noexcept {
  static constexpr Errc kAll[] = {
      Errc::MalformedField, Errc::DuplicateField, Errc::MissingField,
      Errc::BadConstraint,  Errc::BadVersion,     Errc::BadName,
      Errc::SelfDependency, Errc::DuplicatePackage, Errc::CycleDetected,
      Errc::MalformedLine,  Errc::UnresolvedPlaceholder, Errc::ExcludedPackage,
      Errc::NeedsCuration,  Errc::NoMappingFound, Errc::InvalidRequest,
      Errc::MalformedMessage, Errc::BackendFailure, Errc::UnknownPackage,
      Errc::ReentrantCall,  Errc::SocketError,    Errc::IoError,
  };
  for (Errc code : kAll)
    if (name == errc_name(code)) return code;
  return std::nullopt;
}

}  // namespace pkgbridge
