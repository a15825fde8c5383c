#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmvspec {

enum class ErrorCode {
  Pole,
  NotElliptic,
  NotSU11,
  InvalidWord,
  WindowTooSmall,
  SupportTouchesBoundary,
  ZeroSpectralParameter,
  OddIndex,
  OffCircle,
  GridTooCoarse,
  OutsideBand,
  NearEdge,
  RootBracketFailure,
  QuadratureNotConverged,
  ArcTooLong,
  GapOpeningFailed,
  CoverCertificationFailed,
  NTooSmall,
  EtaNonPositive,
  ScheduleInfeasible,
  DegenerateCoin,
  NotWalkShaped,
  Config,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failed
/// contract so callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cmvspec
