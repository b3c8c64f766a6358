#include "mmspace/error.h"

namespace mmspace {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAsymmetricDistance: return "AsymmetricDistance";
    case ErrorCode::kDegenerateDistance: return "DegenerateDistance";
    case ErrorCode::kTriangleViolation: return "TriangleViolation";
    case ErrorCode::kNotProbability: return "NotProbability";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kNonpositiveEdgeLength: return "NonpositiveEdgeLength";
    case ErrorCode::kBadParameter: return "BadParameter";
    case ErrorCode::kEmptySubset: return "EmptySubset";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kTooLargeForExact: return "TooLargeForExact";
    case ErrorCode::kBadKappa: return "BadKappa";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kNullSet: return "NullSet";
    case ErrorCode::kSolverFailure: return "SolverFailure";
    case ErrorCode::kBadLambda: return "BadLambda";
    case ErrorCode::kMissingPathTable: return "MissingPathTable";
    case ErrorCode::kNoGraphData: return "NoGraphData";
    case ErrorCode::kBadTime: return "BadTime";
    case ErrorCode::kDegenerateSets: return "DegenerateSets";
    case ErrorCode::kBadOrder: return "BadOrder";
    case ErrorCode::kZeroGap: return "ZeroGap";
    case ErrorCode::kBadGrid: return "BadGrid";
    case ErrorCode::kUnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message) {
  return std::string(error_code_name(code)) + ": " + message;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::vector<int> witness)
    : std::runtime_error(format_message(code, message)),
      code_(code),
      cause_(code),
      witness_(std::move(witness)) {}

Error::Error(ErrorCode code, ErrorCode cause, const std::string& message)
    : std::runtime_error(format_message(code, message)),
      code_(code),
      cause_(cause) {}

}  // namespace mmspace
