#pragma once

#include <stdexcept>

namespace qdspin {

// Base class for everything the library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParams : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };
struct ZeroNormState : Error { using Error::Error; };
struct TooManySpins : Error { using Error::Error; };
struct WrongArity : Error { using Error::Error; };
struct BadPartition : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct BadRange : Error { using Error::Error; };
struct NoSolutionInBracket : Error { using Error::Error; };
struct BadNodeIndex : Error { using Error::Error; };
struct BadWeights : Error { using Error::Error; };

// Unusable CLI configuration (maps to exit code 2 rather than 1).
struct ConfigError : Error { using Error::Error; };

}  // namespace qdspin
