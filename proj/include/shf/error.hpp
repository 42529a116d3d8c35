#pragma once

#include <stdexcept>
#include <string>

namespace shf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// malformed text input (structure equations, forms, constraints)
struct ParseError : Error {
    using Error::Error;
};

// mixing Q(sqrt d1) with Q(sqrt d2), or wrong scalar context
struct ContextError : Error {
    using Error::Error;
};

// operation undefined on the given input (singular matrix, lambda >= 0, ...)
struct DomainError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct UnknownEntry : Error {
    using Error::Error;
};

}  // namespace shf
