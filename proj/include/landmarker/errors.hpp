#pragma once

#include <stdexcept>
#include <string>

namespace landmarker {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad configuration (unknown key, invariant violation). CLI exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

/// Malformed or missing input file. CLI exit code 3.
struct FormatError : Error {
    using Error::Error;
};

/// Operation precondition violated (e.g. track too short). CLI exit code 4.
struct PreconditionError : Error {
    using Error::Error;
};

/// Internal invariant breach. CLI exit code 5.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace landmarker
