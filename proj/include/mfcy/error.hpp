#pragma once

#include <stdexcept>
#include <string>

namespace mfcy {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (polynomial grammar, JSON schema, numbers).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Structurally valid input violating a mathematical precondition
/// (dimension mismatch, not a factorization, non-isolated critical locus, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Requested computation exceeds the configured term budget.
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

/// A specialized backend cannot handle the query; callers may fall back.
class BackendUnsupported : public Error {
public:
    explicit BackendUnsupported(const std::string& msg) : Error(msg) {}
};

} // namespace mfcy
