#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace koenigs {

enum class ErrorCode {
    OutsideDomain,
    NewtonDiverged,
    BranchAmbiguous,
    DerivativeSingular,
    NoConvergence,
    NotConverged,
    InvalidDomain,
    UndecidableSampled,
    UnsupportedSampled,
    NotASemigroup,
    NotASelfMap,
    InconsistentModel,
    EllipticInput,
    MultiplierOutOfRange,
    NotCommuting,
    BranchUnresolved,
    NotPeriodic,
    WindingNotOne,
    QuadratureFailed,
    NotInSemigroup,
    MismatchedMethods,
    NegativeImaginaryPart,
    UnsupportedInput,
    IntegrationFailed,
    LeftDomain,
    NotHerglotz,
    ZeroAtOrigin,
    NoLimit,
    NotInvariant,
    ParseError,
    ClaimFailed,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace koenigs
