#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cellform {

enum class ErrorCode {
    DanglingFace,
    BadSign,
    RepeatedFace,
    TooFewFaces,
    BoundaryNotSquareZero,
    NonPositiveWeight,
    BadParameter,
    DimensionOutOfRange,
    UnknownCell,
    UnsupportedDimension,
    EigensolverFailure,
    ToleranceAmbiguous,
    NotClosed,
    MissingValue,
    NotQuasiconvex,
    UnsupportedComplexClass,
    NonConstantWeights,
    NotClosedSurface,
    NormalizationViolated,
    ParseError,
    SelfLoop,
    DuplicateEdge,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    // Errors raised while checking the structural invariants of a complex.
    bool is_validation() const noexcept;

private:
    ErrorCode code_;
};

}  // namespace cellform
