#include "blackwell/matrix_game.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace blackwell {

namespace {

constexpr double kPivotEps = 1e-12;
constexpr int kMaxPivots = 100000;

// Column player's program for a matrix with entries in [1,2]:
//   maximize sum(w)  subject to  M w <= 1, w >= 0.
// Its optimum is 1/value; the row player's program is the dual, whose
// solution sits in the objective row under the slack columns.
struct SimplexResult {
  Vector column_weights;
  Vector row_weights;
};

SimplexResult solve_shifted(const Matrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  const Eigen::Index rhs = cols + rows;
  Matrix tableau = Matrix::Zero(rows + 1, cols + rows + 1);
  tableau.topLeftCorner(rows, cols) = m;
  tableau.block(0, cols, rows, rows).setIdentity();
  tableau.col(rhs).head(rows).setOnes();
  tableau.row(rows).head(cols).setConstant(-1.0);

  std::vector<Eigen::Index> basis(static_cast<std::size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) basis[static_cast<std::size_t>(i)] = cols + i;

  for (int pivots = 0;; ++pivots) {
    if (pivots > kMaxPivots) throw std::runtime_error("simplex did not terminate");

    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < rhs; ++j) {
      if (tableau(rows, j) < -kPivotEps) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;

    Eigen::Index leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double coef = tableau(i, entering);
      if (coef <= kPivotEps) continue;
      const double ratio = tableau(i, rhs) / coef;
      const bool tie = std::abs(ratio - best_ratio) <= kPivotEps * (1.0 + std::abs(ratio));
      if (leaving < 0 || (ratio < best_ratio && !tie) ||
          (tie && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
        leaving = i;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    if (leaving < 0) throw std::runtime_error("matrix game program is unbounded");

    tableau.row(leaving) /= tableau(leaving, entering);
    for (Eigen::Index i = 0; i <= rows; ++i) {
      if (i == leaving) continue;
      const double factor = tableau(i, entering);
      if (factor != 0.0) tableau.row(i) -= factor * tableau.row(leaving);
    }
    basis[static_cast<std::size_t>(leaving)] = entering;
  }

  SimplexResult out;
  out.column_weights = Vector::Zero(cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index var = basis[static_cast<std::size_t>(i)];
    if (var < cols) out.column_weights[var] = tableau(i, rhs);
  }
  out.row_weights = tableau.row(rows).segment(cols, rows).transpose();
  return out;
}

}  // namespace

MatrixGameSolution solve_matrix_game(const Matrix& payoff, double tol) {
  if (payoff.rows() == 0 || payoff.cols() == 0) {
    throw std::invalid_argument("matrix game must have at least one row and one column");
  }
  if (!payoff.allFinite()) throw std::invalid_argument("matrix game entries must be finite");
  if (!(tol > 0.0)) throw std::invalid_argument("matrix game tolerance must be positive");

  MatrixGameSolution sol;
  const double lo = payoff.minCoeff();
  const double hi = payoff.maxCoeff();
  if (hi == lo) {
    sol.value = sol.lower_bound = sol.upper_bound = lo;
    sol.x_opt = point_mass(static_cast<std::size_t>(payoff.rows()), 0);
    sol.y_opt = point_mass(static_cast<std::size_t>(payoff.cols()), 0);
    return sol;
  }

  const Matrix shifted = (payoff.array() - lo) / (hi - lo) + 1.0;
  const SimplexResult lp = solve_shifted(shifted);
  sol.x_opt = clean_distribution(lp.row_weights);
  sol.y_opt = clean_distribution(lp.column_weights);

  sol.lower_bound = (sol.x_opt.transpose() * payoff).minCoeff();
  sol.upper_bound = (payoff * sol.y_opt).maxCoeff();
  sol.duality_gap = std::max(0.0, sol.upper_bound - sol.lower_bound);
  sol.value = 0.5 * (sol.lower_bound + sol.upper_bound);
  if (sol.duality_gap > tol) {
    throw std::runtime_error("matrix game solve left a duality gap of " +
                             std::to_string(sol.duality_gap));
  }
  return sol;
}

}  // namespace blackwell
