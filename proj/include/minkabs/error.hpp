#pragma once

#include <stdexcept>
#include <string>

namespace minkabs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arithmetic between measure-line quantities of incompatible dimension.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of the operation
/// (spacelike vector where a causal one is required, mismatched observers, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid model or run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace minkabs
