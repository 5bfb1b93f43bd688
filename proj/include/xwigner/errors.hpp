#pragma once

#include <stdexcept>
#include <string>

namespace xwigner {

/// Base class for all library errors. Everything thrown here derives from
/// std::runtime_error so callers can catch coarsely or by category.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid parameters or operands that do not belong together
/// (bad grid parameters, mismatched grids, out-of-range basis index).
struct ConfigurationError : Error {
    using Error::Error;
};

/// Norm mass escaped the grid: an input lost (or an operation would lose)
/// the well-contained property.
struct ContainmentError : Error {
    using Error::Error;
};

/// An overlap fell below the orthogonality threshold, making a
/// quasi-probability or weak value ill-defined.
struct OrthogonalityError : Error {
    using Error::Error;
};

/// A basis expansion captured too little of the state's norm.
struct CoverageError : Error {
    CoverageError(const std::string& what, double captured)
        : Error(what), captured_mass(captured) {}
    double captured_mass;
};

/// A denominator is too small for the requested inversion.
struct ConditioningError : Error {
    using Error::Error;
};

/// File or stream failure while reading or writing artifacts.
struct IoError : Error {
    using Error::Error;
};

}  // namespace xwigner
