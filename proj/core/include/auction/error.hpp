#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace auction {

enum class ErrorCode {
  kUnknownOrderId,
  kDuplicateOrderId,
  kOffGridPrice,
  kNonPositiveQuantity,
  kMissingPrice,
  kSideMismatch,
  kEmptySide,
  kMismatchedBinning,
  kNoCross,
  kDegenerateAuction,
  kBeyondTruncation,
  kZeroLiquidity,
  kNoPositiveRoot,
  kTooFewPoints,
  kNonPositiveDensity,
  kLengthMismatch,
  kDegenerateSample,
  kEmptySample,
  kEmptyBatch,
  kInfeasibleConfig,
  kParse,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every recoverable failure in the library surfaces as an Error carrying a
// code, so callers (the CLI in particular) can map classes of failure onto
// exit statuses without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace auction
