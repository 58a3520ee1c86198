#include "cellform/error.hpp"

namespace cellform {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DanglingFace: return "DanglingFace";
        case ErrorCode::BadSign: return "BadSign";
        case ErrorCode::RepeatedFace: return "RepeatedFace";
        case ErrorCode::TooFewFaces: return "TooFewFaces";
        case ErrorCode::BoundaryNotSquareZero: return "BoundaryNotSquareZero";
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::BadParameter: return "BadParameter";
        case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
        case ErrorCode::UnknownCell: return "UnknownCell";
        case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorCode::EigensolverFailure: return "EigensolverFailure";
        case ErrorCode::ToleranceAmbiguous: return "ToleranceAmbiguous";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::MissingValue: return "MissingValue";
        case ErrorCode::NotQuasiconvex: return "NotQuasiconvex";
        case ErrorCode::UnsupportedComplexClass: return "UnsupportedComplexClass";
        case ErrorCode::NonConstantWeights: return "NonConstantWeights";
        case ErrorCode::NotClosedSurface: return "NotClosedSurface";
        case ErrorCode::NormalizationViolated: return "NormalizationViolated";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    }
    return "Unknown";
}

bool Error::is_validation() const noexcept {
    switch (code_) {
        case ErrorCode::DanglingFace:
        case ErrorCode::BadSign:
        case ErrorCode::RepeatedFace:
        case ErrorCode::TooFewFaces:
        case ErrorCode::BoundaryNotSquareZero:
        case ErrorCode::NonPositiveWeight:
        case ErrorCode::BadParameter:
        case ErrorCode::SelfLoop:
        case ErrorCode::DuplicateEdge:
            return true;
        default:
            return false;
    }
}

}  // namespace cellform
