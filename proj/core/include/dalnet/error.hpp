#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dalnet {

// Every failure raised by the library carries one of these codes. The CLI
// prints the code name so callers can tell which module rejected the input.
enum class Errc {
  CycleDetected,
  DanglingVertexRef,
  NonpositiveLength,
  MissingLengthAndCoords,
  DuplicateId,
  UnknownSegment,
  UnknownVertex,
  InvalidLocation,
  NoRootDesignated,
  RootCannotReach,
  NonpositiveFactor,
  AmbiguousAllocation,
  IsolatedVertex,
  UnknownPoint,
  DuplicateLocation,
  UnknownMark,
  NegativeRate,
  InvalidParameter,
  NonfiniteIntensity,
  RootSolveFailure,
  BoundViolation,
  DomainError,
  NonConvergence,
  DegenerateData,
  ZeroLengthSegment,
  EmptySample,
  ParseError,
  UsageError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dalnet
