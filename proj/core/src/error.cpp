#include "dalnet/error.hpp"

namespace dalnet {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::DanglingVertexRef: return "DanglingVertexRef";
    case Errc::NonpositiveLength: return "NonpositiveLength";
    case Errc::MissingLengthAndCoords: return "MissingLengthAndCoords";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::UnknownSegment: return "UnknownSegment";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::InvalidLocation: return "InvalidLocation";
    case Errc::NoRootDesignated: return "NoRootDesignated";
    case Errc::RootCannotReach: return "RootCannotReach";
    case Errc::NonpositiveFactor: return "NonpositiveFactor";
    case Errc::AmbiguousAllocation: return "AmbiguousAllocation";
    case Errc::IsolatedVertex: return "IsolatedVertex";
    case Errc::UnknownPoint: return "UnknownPoint";
    case Errc::DuplicateLocation: return "DuplicateLocation";
    case Errc::UnknownMark: return "UnknownMark";
    case Errc::NegativeRate: return "NegativeRate";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::NonfiniteIntensity: return "NonfiniteIntensity";
    case Errc::RootSolveFailure: return "RootSolveFailure";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::DomainError: return "DomainError";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::DegenerateData: return "DegenerateData";
    case Errc::ZeroLengthSegment: return "ZeroLengthSegment";
    case Errc::EmptySample: return "EmptySample";
    case Errc::ParseError: return "ParseError";
    case Errc::UsageError: return "UsageError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace dalnet
