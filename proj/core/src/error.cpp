#include "ftvol/error.hpp"

namespace ftvol {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::NonPositivePrice: return "NonPositivePrice";
    case ErrorCode::DuplicateDate: return "DuplicateDate";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::BadSpacing: return "BadSpacing";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::BadQuadratureSpec: return "BadQuadratureSpec";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::BadHorizon: return "BadHorizon";
    case ErrorCode::AlreadyAnnualized: return "AlreadyAnnualized";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::BadTheta: return "BadTheta";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::TooFewPairs: return "TooFewPairs";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace ftvol
