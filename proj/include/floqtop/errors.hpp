#pragma once

#include <stdexcept>
#include <string>

namespace floqtop {

/// Base class for failures of the numerical contracts (gap closures,
/// non-quantized sums, unresolved singularities, ...). The CLI maps these
/// to exit code 3; configuration problems use std::invalid_argument and
/// exit code 2.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Quasienergy gap closed at a single k-point.
struct DegeneratePoint : NumericalError {
  using NumericalError::NumericalError;
};

/// Gap closure detected somewhere on a k-grid.
struct DegenerateGrid : NumericalError {
  using NumericalError::NumericalError;
};

/// Lattice Chern sum deviates from an integer; the grid is under-resolved.
struct NonQuantized : NumericalError {
  using NumericalError::NumericalError;
};

/// Both texture components vanish; the winding angle is undefined here.
struct SingularPoint : NumericalError {
  using NumericalError::NumericalError;
};

/// Opposite-winding singularities closer than two grid cells, or a texture
/// zero sitting on a grid node; the grid must be refined.
struct UnresolvedSingularity : NumericalError {
  using NumericalError::NumericalError;
};

/// Consecutive loop samples jump too far for reliable phase unwrapping.
struct AmbiguousUnwrap : NumericalError {
  using NumericalError::NumericalError;
};

/// Weighted winding sum came out odd: singularities were missed or
/// misweighted.
struct OddSum : NumericalError {
  using NumericalError::NumericalError;
};

/// The initial-state rule gives |c+|^2 ~ |c-|^2 on too much of the grid.
struct WeightGapViolation : NumericalError {
  using NumericalError::NumericalError;
};

/// Nonlinear fit failed to converge.
struct FitDiverged : NumericalError {
  using NumericalError::NumericalError;
};

/// A pulse was requested for a vanishing target field.
struct ZeroField : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace floqtop
