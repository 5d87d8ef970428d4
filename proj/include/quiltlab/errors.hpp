#pragma once

#include <stdexcept>
#include <string>

namespace quiltlab {

/// Error categories raised across the library. Each operation documents the
/// subset it may raise.
enum class ErrorCode {
  NonInvolution,
  FixedPointInTwin,
  SizeMismatch,
  NotPermutation,
  ParseError,
  FactorizationViolation,
  DegenerateSegment,
  NotSimple,
  HopfViolation,
  PathDegeneratesUnderF,
  MissingOrder,
  WrongGonProfile,
  DisconnectedSelection,
  BudgetExhausted,
  BijectionViolation,
  SingularMap,
  EmbeddingDegenerate,
  InvalidChoice,
  GammaOutOfRange,
  RejectionBudgetExceeded,
  PartitionMismatch,
  ConstraintViolated,
  LengthCollision,
  NotOrthogonal,
  NegativeChi,
  Disconnected,
  SingularLaplacian,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace quiltlab
