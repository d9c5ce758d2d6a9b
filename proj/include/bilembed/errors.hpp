#pragma once

#include <stdexcept>
#include <string>

namespace bilembed {

/// Input violates a documented precondition of the operation.
struct PreconditionViolation : std::invalid_argument {
    explicit PreconditionViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// A quadrature or calibration step could not reach its tolerance.
struct NonConvergent : std::runtime_error {
    explicit NonConvergent(const std::string& what) : std::runtime_error(what) {}
};

/// Argument lies on the excluded ray of a branch cut.
struct OnBranchCut : PreconditionViolation {
    explicit OnBranchCut(const std::string& what) : PreconditionViolation(what) {}
};

struct SizeMismatch : PreconditionViolation {
    explicit SizeMismatch(const std::string& what) : PreconditionViolation(what) {}
};

struct WrongSide : PreconditionViolation {
    explicit WrongSide(const std::string& what) : PreconditionViolation(what) {}
};

/// Spectral mass too close to the Nyquist edge for a reliable multiplier.
struct AliasRisk : PreconditionViolation {
    explicit AliasRisk(const std::string& what) : PreconditionViolation(what) {}
};

struct DegenerateDenominator : std::runtime_error {
    explicit DegenerateDenominator(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bilembed
