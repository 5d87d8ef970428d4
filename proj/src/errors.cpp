#include "quiltlab/errors.hpp"

namespace quiltlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonInvolution: return "NonInvolution";
    case ErrorCode::FixedPointInTwin: return "FixedPointInTwin";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotPermutation: return "NotPermutation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FactorizationViolation: return "FactorizationViolation";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::HopfViolation: return "HopfViolation";
    case ErrorCode::PathDegeneratesUnderF: return "PathDegeneratesUnderF";
    case ErrorCode::MissingOrder: return "MissingOrder";
    case ErrorCode::WrongGonProfile: return "WrongGonProfile";
    case ErrorCode::DisconnectedSelection: return "DisconnectedSelection";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::BijectionViolation: return "BijectionViolation";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::EmbeddingDegenerate: return "EmbeddingDegenerate";
    case ErrorCode::InvalidChoice: return "InvalidChoice";
    case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::PartitionMismatch: return "PartitionMismatch";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::LengthCollision: return "LengthCollision";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NegativeChi: return "NegativeChi";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::SingularLaplacian: return "SingularLaplacian";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace quiltlab
