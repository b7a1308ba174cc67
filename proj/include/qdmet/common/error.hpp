// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <stdexcept>
#include <string>

namespace qdmet {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed user input (XYZ files, config files, CLI arguments).
struct ParseError : Error {
    using Error::Error;
};

/// Numerically ill-conditioned problem (near-singular overlap, singular
/// confusion matrix, degenerate denominators).
struct ConditioningError : Error {
    using Error::Error;
};

/// Problem size exceeds a hard capacity limit (determinant count, qubit count).
struct CapacityError : Error {
    using Error::Error;
};

/// A contract violation by the caller (odd electron count, mismatched shapes).
struct ContractError : Error {
    using Error::Error;
};

/// Fragmentation produced an inconsistent embedding (odd electron parity,
/// non-partition orbital sets).
struct FragmentationError : Error {
    using Error::Error;
};

/// Error mitigation could not produce a usable distribution (every shot
/// filtered out, degenerate calibration counts).
struct MitigationError : Error {
    using Error::Error;
};

/// A rigid-body scan transform produced an unusable structure (overlapping
/// atoms, empty moving group).
struct GeometryError : Error {
    using Error::Error;
};

}  // namespace qdmet
