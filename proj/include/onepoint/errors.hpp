#ifndef ONEPOINT_ERRORS_HPP
#define ONEPOINT_ERRORS_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace onepoint {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonPrimeError : Error {
    explicit NonPrimeError(int64_t p) : Error("not a prime: " + std::to_string(p)) {}
};

struct ReducibleModulusError : Error {
    explicit ReducibleModulusError(const std::string& msg) : Error("reducible modulus: " + msg) {}
};

struct LimitExceededError : Error {
    explicit LimitExceededError(const std::string& msg) : Error("limit exceeded: " + msg) {}
};

struct MixedFieldsError : Error {
    explicit MixedFieldsError(const std::string& msg) : Error("mixed fields: " + msg) {}
};

struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("division by zero") {}
};

struct IncompatibleTowerError : Error {
    explicit IncompatibleTowerError(const std::string& msg) : Error("incompatible tower: " + msg) {}
};

struct MixedRingsError : Error {
    explicit MixedRingsError(const std::string& msg) : Error("mixed rings: " + msg) {}
};

struct DegreeTooLargeError : Error {
    explicit DegreeTooLargeError(const std::string& msg) : Error("degree too large: " + msg) {}
};

struct ZeroPolynomialError : Error {
    explicit ZeroPolynomialError(const std::string& msg) : Error("zero polynomial: " + msg) {}
};

struct DivisorZeroError : Error {
    DivisorZeroError() : Error("division by the zero polynomial") {}
};

struct NonConstantLeadingCoeffError : Error {
    explicit NonConstantLeadingCoeffError(const std::string& msg)
        : Error("leading coefficient is not a nonzero constant: " + msg) {}
};

struct SplittingNotFoundError : Error {
    explicit SplittingNotFoundError(const std::string& msg) : Error("splitting field not found: " + msg) {}
};

struct ExhaustedError : Error {
    uint64_t trials;
    explicit ExhaustedError(uint64_t t) : Error("search exhausted after " + std::to_string(t) + " trials"), trials(t) {}
};

/// One of the per-step construction conditions (a)-(d) failed, or the
/// candidate produced an invalid next triple ('t').
struct ConditionFailedError : Error {
    char condition;
    explicit ConditionFailedError(char c, const std::string& msg = "")
        : Error(std::string("condition (") + c + ") failed" + (msg.empty() ? "" : ": " + msg)), condition(c) {}
};

/// Tally indices: 0..3 = conditions (a)-(d), 4 = next-triple validation.
struct SearchFailedError : Error {
    std::array<uint64_t, 5> tally;
    explicit SearchFailedError(const std::array<uint64_t, 5>& t, const std::string& msg)
        : Error("coordinate search failed: " + msg), tally(t) {}
};

struct NotInGeneralPositionError : Error {
    explicit NotInGeneralPositionError(const std::string& msg) : Error("forms not in general position: " + msg) {}
};

struct BasePointHitError : Error {
    explicit BasePointHitError(const std::string& msg) : Error("base point hit: " + msg) {}
};

struct PointOnDivisorError : Error {
    explicit PointOnDivisorError(const std::string& msg) : Error("point lies on the divisor: " + msg) {}
};

struct NotHomogeneousError : Error {
    explicit NotHomogeneousError(const std::string& msg) : Error("not homogeneous: " + msg) {}
};

struct DegenerateJacobianError : Error {
    explicit DegenerateJacobianError(const std::string& msg)
        : Error("jacobian vanishes identically: " + msg) {}
};

struct EnumerationCapExceededError : Error {
    explicit EnumerationCapExceededError(const std::string& msg) : Error("enumeration cap exceeded: " + msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error("format error: " + msg) {}
};

/// An internal consistency check failed; indicates a bug, not bad input.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error("internal error: " + msg) {}
};

}  // namespace onepoint

#endif
