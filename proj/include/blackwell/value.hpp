#pragma once

#include "blackwell/game.hpp"

#include <span>
#include <utility>
#include <vector>

namespace blackwell {

inline constexpr double kDefaultValueTolerance = 1e-9;

struct DiscountedSolution {
  double lambda = 0.0;
  double value = 0.0;
  Vector x_opt;
  Vector y_opt;
  /// |val(M_lambda(value)) - value|
  double residual = 0.0;
  int iterations = 0;
};

/// The one-shot matrix M(a,b) = lambda r(a,b) + (1-lambda)[g*(a,b) + (1-p*(a,b)) v]
/// whose value, as a function of the continuation value v, is the Shapley
/// operator of the non-absorbing state.
Matrix shapley_matrix(const AbsorbingGame& game, double lambda, double continuation);

/**
 * Discounted value v_lambda as the fixed point of v -> val(M_lambda(v)).
 *
 * w(v) = val(M_lambda(v)) - v is strictly decreasing with slope at most
 * -lambda, so bisection on [min payoff, max payoff] converges in a number of
 * steps independent of lambda. Stops when the bracket is narrower than `tol`
 * or |w| <= tol * lambda; either way |value - v_lambda| <= tol.
 */
DiscountedSolution discounted_value(const AbsorbingGame& game, double lambda,
                                    double tol = kDefaultValueTolerance);

/// Optimal stationary strategies (x, y) of the lambda-discounted game.
std::pair<Vector, Vector> optimal_strategy_profile(const AbsorbingGame& game, double lambda);

struct ValueSweep {
  /// v_lambda at the smallest grid point.
  double estimate = 0.0;
  /// One solution per grid point, in grid order.
  std::vector<DiscountedSolution> sweep;
};

/// Raw sweep of v_lambda over a strictly decreasing grid in (0,1) with at
/// least three points. No extrapolation past the last point.
ValueSweep limit_value_estimate(const AbsorbingGame& game, std::span<const double> lambda_grid,
                                double tol = kDefaultValueTolerance);

/// Player 1's action (x, alpha) in the limit one-shot game: a mixed action
/// and a nonnegative absorption intensity per row.
struct LimitValueAction {
  Vector x;
  Vector alpha;
};

/// Player 2's counterpart (y, beta).
struct LimitValueResponse {
  Vector y;
  Vector beta;
};

/// (r(x,y) + g*(alpha,y) + g*(x,beta)) / (1 + p*(alpha,y) + p*(x,beta)).
/// Throws std::invalid_argument for negative intensities or size mismatches.
double limit_game_payoff(const AbsorbingGame& game, const LimitValueAction& p1,
                         const LimitValueResponse& p2);

}  // namespace blackwell
