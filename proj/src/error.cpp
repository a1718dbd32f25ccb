#include "qgdd/error.hpp"

namespace qgdd {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonPrimeModulus: return "NonPrimeModulus";
    case Errc::NonPrimitivePolynomial: return "NonPrimitivePolynomial";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotAPoint: return "NotAPoint";
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::ConstraintRequiresSpread: return "ConstraintRequiresSpread";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::NotAPartition: return "NotAPartition";
    case Errc::DuplicateBlocks: return "DuplicateBlocks";
    case Errc::BlockDimensionMismatch: return "BlockDimensionMismatch";
    case Errc::BlockMeetsGroupBadly: return "BlockMeetsGroupBadly";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NoLambdaMax: return "NoLambdaMax";
    case Errc::NotFat: return "NotFat";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::SelectionRequired: return "SelectionRequired";
    case Errc::SelectionOutOfRange: return "SelectionOutOfRange";
    case Errc::NotSteinerSampled: return "NotSteinerSampled";
    case Errc::GroupDoesNotStabilizeSpread: return "GroupDoesNotStabilizeSpread";
    case Errc::DecodeError: return "DecodeError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace qgdd
