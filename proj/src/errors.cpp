#include "infoclubs/errors.hpp"

namespace infoclubs {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPositivePrecision: return "non_positive_precision";
    case ErrorCode::kNonPositiveGamma: return "non_positive_gamma";
    case ErrorCode::kCostBaseNonzero: return "cost_base_nonzero";
    case ErrorCode::kDecreasingCost: return "decreasing_cost";
    case ErrorCode::kNonConvexCost: return "non_convex_cost";
    case ErrorCode::kBadNetwork: return "bad_network";
    case ErrorCode::kEmptySubset: return "empty_subset";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kSupportViolation: return "support_violation";
    case ErrorCode::kNonPositiveTolerance: return "non_positive_tolerance";
    case ErrorCode::kIsolatedSender: return "isolated_sender";
    case ErrorCode::kNotAnEquilibrium: return "not_an_equilibrium";
    case ErrorCode::kBadPartition: return "bad_partition";
    case ErrorCode::kBadScenario: return "bad_scenario";
  }
  return "unknown";
}

}  // namespace infoclubs
