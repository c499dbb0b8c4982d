#ifndef DRIFTARB_ERRORS_HPP
#define DRIFTARB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace driftarb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or usage (CLI exit code 1).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Bad or insufficient input data (CLI exit code 2).
class DataError : public Error {
public:
    using Error::Error;
};

/// Degenerate numeric situation: zero-variance sample, zero denominator,
/// singular normal equations.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace driftarb

#endif
