#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eigenmap {

enum class ErrorCode {
    PointOutOfDomain,
    SingularMetric,
    DegenerateSection,
    CodomainExit,
    EigenvalueCollision,
    IndexError,
    RankDeficient,
    NoFibre,
    OddCodomain,
    NotPHWC,
    RankOdd,
    NotHWC,
    NonPositiveConformalFactor,
    NotDoubledSpectrum,
    DilatationExceeded,
    DegenerateRank,
    MissingCurvatureBounds,
    DomainViolation,
    InvalidModel,
    NonPositiveA,
    JetOrderInsufficient,
    RangeEscape,
    HypothesisViolated,
    GroupCollision,
    MissingStructure,
    UnknownExample,
    UnknownSuite,
    UnknownId,
    ConfigError,
};

std::string_view error_name(ErrorCode code);

class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace eigenmap
