#pragma once

#include <stdexcept>
#include <string>

namespace infoclubs {

// Reasons an input can be rejected before any computation runs. Each code maps
// to exactly one violated invariant so callers (and the CLI exit-code logic)
// can react per class.
enum class ErrorCode {
  kNonPositivePrecision,
  kNonPositiveGamma,
  kCostBaseNonzero,
  kDecreasingCost,
  kNonConvexCost,
  kBadNetwork,
  kEmptySubset,
  kDimensionMismatch,
  kSupportViolation,
  kNonPositiveTolerance,
  kIsolatedSender,
  kNotAnEquilibrium,
  kBadPartition,
  kBadScenario,
};

const char* error_code_name(ErrorCode code);

class ValidationError : public std::runtime_error {
 public:
  ValidationError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Thrown when a combinatorial search would exceed its enumeration guard
// (set partitions, coalition subsets). Larger instances must fail loudly
// instead of silently degrading.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace infoclubs
