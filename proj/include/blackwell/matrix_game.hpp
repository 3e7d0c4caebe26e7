#pragma once

#include "blackwell/common.hpp"

namespace blackwell {

inline constexpr double kDefaultMatrixGameTolerance = 1e-9;

/// Solution of a zero-sum matrix game where the row player maximizes.
struct MatrixGameSolution {
  double value = 0.0;
  Vector x_opt;  ///< row player's optimal mixed strategy
  Vector y_opt;  ///< column player's optimal mixed strategy
  /// min over columns of x_opt' M: what x_opt guarantees.
  double lower_bound = 0.0;
  /// max over rows of M y_opt: what y_opt concedes at most.
  double upper_bound = 0.0;
  /// upper_bound - lower_bound, nonnegative up to round-off.
  double duality_gap = 0.0;
};

/**
 * Solves max_x min_y x' M y by the simplex method on the column player's
 * linear program, reading the row player's strategy off the final reduced
 * costs. Bland's pivoting rule keeps the result deterministic and
 * cycle-free. Intended for small dense matrices (a few dozen rows and
 * columns).
 *
 * Throws std::invalid_argument on an empty or non-finite matrix and
 * std::runtime_error if the certified gap exceeds `tol`.
 */
MatrixGameSolution solve_matrix_game(const Matrix& payoff,
                                     double tol = kDefaultMatrixGameTolerance);

}  // namespace blackwell
