#pragma once

#include <stdexcept>
#include <string>

namespace gridmix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed design or library text. Line and column are 1-based; 0 when
/// the error is not tied to a text position (e.g. a wrong JSON type).
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line = 0, int column = 0);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// No inlet-to-outlet path exists in the design.
class NoPathError : public Error {
public:
    using Error::Error;
};

/// The flow system could not be solved. Never expected for pruned, valid
/// designs.
class SingularSystemError : public Error {
public:
    using Error::Error;
};

/// The oriented flow graph (or the dual graph) contains a cycle.
class CycleError : public Error {
public:
    using Error::Error;
};

/// A node's in/out pattern matches none of the allowed node kinds.
class UnclassifiableNodeError : public Error {
public:
    using Error::Error;
};

/// Dual reachability gave no verdict, or both verdicts, for an unrelated
/// pair of channels.
class AmbiguousOrderError : public Error {
public:
    using Error::Error;
};

/// The random generator ran out of attempts.
class GenerationFailure : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace gridmix
