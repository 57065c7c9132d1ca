#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torus {

enum class Errc {
  NonMonicModulus,
  NotMonic,
  NotSquarefree,
  EndpointIsRoot,
  IndexOutOfRange,
  Reducible,
  NotTotallyReal,
  FieldMismatch,
  ZeroElement,
  NotAUnit,
  DimMismatch,
  NotTotallyRealSplit,
  NotHyperbolic,
  NotCommuting,
  DetNotOne,
  DimTooSmall,
  DimTooLarge,
  OddWeight,
  BadPlane,
  LoopNotClosed,
  IndeterminateLift,
  NotRank3Confined,
  NoFieldAvailable,
  Inconclusive,
  MixedDimensions,
  InvalidArgument,
  Internal,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI's exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised for violated internal invariants (arithmetic bugs, not user errors).
[[noreturn]] void internal_error(const std::string& what);

}  // namespace torus
