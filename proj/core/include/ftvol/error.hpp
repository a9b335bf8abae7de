#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ftvol {

enum class ErrorCode {
  // timeseries
  MalformedCsv,
  NonPositivePrice,
  DuplicateDate,
  TooShort,
  InvalidSpec,
  // partition / ftransform
  BadSpacing,
  IndexOutOfRange,
  OutOfDomain,
  EmptySupport,
  BadQuadratureSpec,
  // volatility
  SeriesTooShort,
  BadHorizon,
  AlreadyAnnualized,
  EmptySeries,
  BadTheta,
  BadArgument,
  // analysis
  NoOverlap,
  DegenerateVariance,
  TooFewPairs,
  // filesystem and stream failures
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

  /// True for filesystem and stream failures; everything else is a
  /// validation failure of the input data or arguments.
  bool is_io() const noexcept { return code_ == ErrorCode::Io; }

 private:
  ErrorCode code_;
};

}  // namespace ftvol
