#pragma once

#include <stdexcept>
#include <string>

namespace freeride {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Environment construction.
struct TiedOptimum : Error { using Error::Error; };
struct BadProbability : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// Policies.
struct ZeroCount : Error { using Error::Error; };
struct InsufficientVisibility : Error { using Error::Error; };
struct CoefficientMismatch : Error { using Error::Error; };

// Theory utilities.
struct BadGap : Error { using Error::Error; };
struct BadEta : Error { using Error::Error; };
struct DegenerateOptimum : Error { using Error::Error; };
struct SupportMismatch : Error { using Error::Error; };

// Metrics and I/O.
struct MissingTable : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct UnknownSuite : Error { using Error::Error; };

}  // namespace freeride
