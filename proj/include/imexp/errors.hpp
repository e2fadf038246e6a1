#pragma once

#include <stdexcept>
#include <string>

namespace imexp {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("DomainError: " + msg) {}
};

struct Pole : Error {
    explicit Pole(const std::string& msg) : Error("Pole: " + msg) {}
};

struct Overflow : Error {
    explicit Overflow(const std::string& msg) : Error("Overflow: " + msg) {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& msg) : Error("ConvergenceFailure: " + msg) {}
};

struct DivergentSeries : Error {
    explicit DivergentSeries(const std::string& msg) : Error("DivergentSeries: " + msg) {}
};

struct DerivativeUnavailable : Error {
    explicit DerivativeUnavailable(const std::string& msg)
        : Error("DerivativeUnavailable: " + msg) {}
};

struct SingularFunction : Error {
    explicit SingularFunction(const std::string& msg) : Error("SingularFunction: " + msg) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& msg) : Error("SingularMatrix: " + msg) {}
};

struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& msg) : Error("QuadratureFailure: " + msg) {}
};

struct SingularEndpoint : Error {
    explicit SingularEndpoint(const std::string& msg) : Error("SingularEndpoint: " + msg) {}
};

struct CommutativityViolation : Error {
    explicit CommutativityViolation(const std::string& msg)
        : Error("CommutativityViolation: " + msg) {}
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error("ShapeError: " + msg) {}
};

struct GenerationFailure : Error {
    explicit GenerationFailure(const std::string& msg) : Error("GenerationFailure: " + msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("ParseError: " + msg) {}
};

}  // namespace imexp
