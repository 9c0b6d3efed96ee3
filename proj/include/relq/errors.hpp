#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relq {

// Byte range into an expression source string, 0-based, half-open.
// Diagnostics report offsets 1-based.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument left the mathematical domain of an operation
// (ln of a non-positive value, zeta of a non-integer, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what, SourceSpan span = {})
        : Error(what), span(span) {}
    SourceSpan span;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset1, std::string expected)
        : Error(what + " at offset " + std::to_string(offset1) +
                (expected.empty() ? "" : " (expected " + expected + ")")),
          offset(offset1),
          expected(std::move(expected)) {}
    std::size_t offset;  // 1-based byte offset
    std::string expected;
};

class UnknownNameError : public Error {
public:
    UnknownNameError(const std::string& name, std::size_t offset1)
        : Error("unknown name '" + name + "' at offset " + std::to_string(offset1)),
          name(name),
          offset(offset1) {}
    std::string name;
    std::size_t offset;
};

class UnsupportedConstantError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ZeroEntryError : public Error {
public:
    explicit ZeroEntryError(std::size_t index)
        : Error("input vector entry " + std::to_string(index + 1) + " is zero"),
          index(index) {}
    std::size_t index;  // 0-based
};

// Raised inside a PSLQ step when the H diagonal collapses below the
// working-precision floor; the driver maps it to PrecisionExhausted.
class NumericBreakdown : public Error {
public:
    using Error::Error;
};

// The detected relation does not involve the target (first coefficient zero).
class TargetAbsentError : public Error {
public:
    using Error::Error;
};

}  // namespace relq
