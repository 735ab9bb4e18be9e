#pragma once

#include <stdexcept>
#include <string>

namespace aarhus {

// Base class for everything the kernel can throw. The CLI maps these to
// exit code 2 (domain errors) except ParseError/VersionMismatch -> 1.
struct KernelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : KernelError {
    int line;
    ParseError(int line_, const std::string& expected)
        : KernelError("parse error at line " + std::to_string(line_) + ": " + expected),
          line(line_) {}
};

struct VersionMismatch : KernelError {
    using KernelError::KernelError;
};

struct SpaceMismatch : KernelError {
    using KernelError::KernelError;
};

struct LimitExceeded : KernelError {
    using KernelError::KernelError;
};

struct BadConstantTerm : KernelError {
    using KernelError::KernelError;
};

struct NotGaussianForm : KernelError {
    using KernelError::KernelError;
};

struct SingularCovariance : KernelError {
    using KernelError::KernelError;
};

struct SolveFailure : KernelError {
    using KernelError::KernelError;
};

struct BadLieData : KernelError {
    using KernelError::KernelError;
};

struct UnsupportedDiagram : KernelError {
    using KernelError::KernelError;
};

struct NonInvertibleUnit : KernelError {
    using KernelError::KernelError;
};

}  // namespace aarhus
