#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmspace {

enum class ErrorCode {
  // Space construction and validation.
  kAsymmetricDistance,
  kDegenerateDistance,
  kTriangleViolation,
  kNotProbability,
  kDisconnectedGraph,
  kNonpositiveEdgeLength,
  kBadParameter,
  kEmptySubset,
  kSchemaError,
  kValidationError,
  // Separation.
  kTooLargeForExact,
  kBadKappa,
  kPreconditionViolated,
  // Transport.
  kNullSet,
  kSolverFailure,
  kBadLambda,
  kMissingPathTable,
  // Spectral.
  kNoGraphData,
  kBadTime,
  kDegenerateSets,
  kBadOrder,
  kZeroGap,
  // Harness.
  kBadGrid,
  kUnknownSuite,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this exception. `cause` carries
// the underlying code when an error wraps another one (e.g. a ValidationError
// raised while reading a file whose contents are NotProbability), and
// `witness` carries point indices that reproduce the failure when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<int> witness = {});
  Error(ErrorCode code, ErrorCode cause, const std::string& message);

  ErrorCode code() const { return code_; }
  ErrorCode cause() const { return cause_; }
  const std::vector<int>& witness() const { return witness_; }

 private:
  ErrorCode code_;
  ErrorCode cause_;
  std::vector<int> witness_;
};

}  // namespace mmspace
