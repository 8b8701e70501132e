#include "auction/error.hpp"

namespace auction {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kUnknownOrderId: return "UnknownOrderId";
    case ErrorCode::kDuplicateOrderId: return "DuplicateOrderId";
    case ErrorCode::kOffGridPrice: return "OffGridPrice";
    case ErrorCode::kNonPositiveQuantity: return "NonPositiveQuantity";
    case ErrorCode::kMissingPrice: return "MissingPrice";
    case ErrorCode::kSideMismatch: return "SideMismatch";
    case ErrorCode::kEmptySide: return "EmptySide";
    case ErrorCode::kMismatchedBinning: return "MismatchedBinning";
    case ErrorCode::kNoCross: return "NoCross";
    case ErrorCode::kDegenerateAuction: return "DegenerateAuction";
    case ErrorCode::kBeyondTruncation: return "BeyondTruncation";
    case ErrorCode::kZeroLiquidity: return "ZeroLiquidity";
    case ErrorCode::kNoPositiveRoot: return "NoPositiveRoot";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kNonPositiveDensity: return "NonPositiveDensity";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDegenerateSample: return "DegenerateSample";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kInfeasibleConfig: return "InfeasibleConfig";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

}  // namespace auction
