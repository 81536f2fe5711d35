// errors.hpp - exception hierarchy
//
// Two families matter for the CLI exit code: configuration/input problems
// (exit 2) and numerical failures discovered at run time (exit 3).

#pragma once

#include <stdexcept>
#include <string>

namespace uwofdm {

/// Base of all library exceptions.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid input, file or configuration (CLI exit code 2).
struct ConfigFamilyError : Error {
    using Error::Error;
};

/// Numerical breakdown (CLI exit code 3).
struct NumericFamilyError : Error {
    using Error::Error;
};

struct ConfigError : ConfigFamilyError {
    using ConfigFamilyError::ConfigFamilyError;
};
struct ParseError : ConfigFamilyError {
    using ConfigFamilyError::ConfigFamilyError;
};
struct IoError : ConfigFamilyError {
    using ConfigFamilyError::ConfigFamilyError;
};
struct DimensionMismatch : ConfigFamilyError {
    using ConfigFamilyError::ConfigFamilyError;
};
struct LengthExceedsN : ConfigFamilyError {
    using ConfigFamilyError::ConfigFamilyError;
};
struct OddBitCount : ConfigFamilyError {
    using ConfigFamilyError::ConfigFamilyError;
};
struct LengthOdd : ConfigFamilyError {
    using ConfigFamilyError::ConfigFamilyError;
};
struct ShapeMismatch : ConfigFamilyError {
    using ConfigFamilyError::ConfigFamilyError;
};
struct UnknownKind : ConfigFamilyError {
    using ConfigFamilyError::ConfigFamilyError;
};
struct InvalidDelaySpread : ConfigFamilyError {
    using ConfigFamilyError::ConfigFamilyError;
};
struct SearchSpaceTooLarge : ConfigFamilyError {
    using ConfigFamilyError::ConfigFamilyError;
};

struct SingularM22 : NumericFamilyError {
    using NumericFamilyError::NumericFamilyError;
};
struct ZeroChannelGain : NumericFamilyError {
    using NumericFamilyError::NumericFamilyError;
};
struct RankDeficient : NumericFamilyError {
    using NumericFamilyError::NumericFamilyError;
};
struct SingularInnerMatrix : NumericFamilyError {
    using NumericFamilyError::NumericFamilyError;
};
struct ZeroNoise : NumericFamilyError {
    using NumericFamilyError::NumericFamilyError;
};
struct NonpositiveVariance : NumericFamilyError {
    using NumericFamilyError::NumericFamilyError;
};
struct ChannelResampleLimitExceeded : NumericFamilyError {
    using NumericFamilyError::NumericFamilyError;
};

} // namespace uwofdm
