#pragma once

#include <stdexcept>
#include <string>

namespace awtp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter/precondition violations carry the violated constraint in the message.
struct ParamError : Error { using Error::Error; };
struct ZeroInverse : Error { using Error::Error; };
struct ContextMismatch : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct ScaleError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// Violation of a property that is guaranteed by construction; always a bug.
struct InternalError : Error { using Error::Error; };

}  // namespace awtp
