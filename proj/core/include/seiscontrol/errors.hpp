#pragma once

#include <stdexcept>
#include <string>

namespace seiscontrol {

/// Base class for every error raised by the library. The CLI maps each
/// subclass onto a distinct process exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid geometry, parameters or scenario settings.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Solver failure or non-finite state.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Input outside an operation's mathematical domain (e.g. a negative intensity).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operation called in the wrong lifecycle state.
class StateError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace seiscontrol
