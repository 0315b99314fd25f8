#pragma once

#include <stdexcept>
#include <string>

namespace mquare {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structural problems in an input file: bad JSON, wrong field types.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace mquare
