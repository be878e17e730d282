/// @file  errors.hpp
/// @brief Exception types thrown across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace ordgeo {

/// A triplet query referenced an index outside [0, n) or repeated an object.
struct InvalidQueryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation needed more objects than the collection holds.
struct InsufficientDataError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A rank lookup hit a head that was never sorted.
struct MissingRankingError : std::logic_error {
    using std::logic_error::logic_error;
};

/// An axis could not be completed because its lens collapsed.
struct DegenerateAxisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A structural guarantee failed at runtime; the message carries diagnostics.
struct InternalInvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A metric was requested on inputs where it is undefined.
struct UndefinedMetricError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// All embedded distances vanished, so no scale can be fitted.
struct DegenerateEmbeddingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A diagnostic was requested outside its supported dimensionality.
struct UnsupportedDiagnosticError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed file input; the message carries the path and line number.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ordgeo
