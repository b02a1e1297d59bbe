// errors.hpp — Exception types shared across the library.

#pragma once

#include <stdexcept>

namespace qdistill {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct BadDimension : Error { using Error::Error; };
struct BadParameter : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotProjector : Error { using Error::Error; };
struct WrongRank : Error { using Error::Error; };
struct SchmidtRankTooHigh : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct ZeroProbability : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace qdistill
