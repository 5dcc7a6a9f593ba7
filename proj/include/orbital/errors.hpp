#pragma once

#include <stdexcept>
#include <string>

namespace orbital {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad index, bad range, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

/// Geometrically degenerate input rejected under the strict policy
/// (typically two features on the same orbit).
struct DegenerateInput : Error {
    using Error::Error;
};

/// Input document could not be parsed; `context` names the offending field.
struct ParseError : Error {
    std::string context;
    ParseError(const std::string& what, std::string ctx)
        : Error(what + " (at " + ctx + ")"), context(std::move(ctx)) {}
};

/// An exhaustive search was refused because its search space exceeds the
/// hard size guard.  The guard exists so reference searches stay exact and
/// bounded instead of silently sampling.
struct SizeRefusal : Error {
    using Error::Error;
};

}  // namespace orbital
