#include "blackwell/value.hpp"

#include "blackwell/matrix_game.hpp"

#include <cmath>
#include <stdexcept>

namespace blackwell {

namespace {

constexpr int kMaxBisectionSteps = 200;

void require_discount(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("discount rate must lie in (0,1)");
  }
}

}  // namespace

Matrix shapley_matrix(const AbsorbingGame& game, double lambda, double continuation) {
  const Matrix& p = game.p_star();
  return lambda * game.reward() +
         (1.0 - lambda) * (game.g_star().array() + (1.0 - p.array()) * continuation).matrix();
}

DiscountedSolution discounted_value(const AbsorbingGame& game, double lambda, double tol) {
  require_discount(lambda);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  DiscountedSolution out;
  out.lambda = lambda;
  double lo = game.min_payoff();
  double hi = game.max_payoff();

  // Invariant: w(lo) >= 0 >= w(hi).
  double value = 0.5 * (lo + hi);
  int steps = 0;
  while (hi - lo > tol && steps < kMaxBisectionSteps) {
    ++steps;
    const double mid = 0.5 * (lo + hi);
    const double w = solve_matrix_game(shapley_matrix(game, lambda, mid)).value - mid;
    if (std::abs(w) <= tol * lambda) {
      lo = hi = mid;
      break;
    }
    if (w > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  value = 0.5 * (lo + hi);

  const auto sol = solve_matrix_game(shapley_matrix(game, lambda, value));
  out.value = value;
  out.x_opt = sol.x_opt;
  out.y_opt = sol.y_opt;
  out.residual = std::abs(sol.value - value);
  out.iterations = steps;
  return out;
}

std::pair<Vector, Vector> optimal_strategy_profile(const AbsorbingGame& game, double lambda) {
  auto sol = discounted_value(game, lambda);
  return {std::move(sol.x_opt), std::move(sol.y_opt)};
}

ValueSweep limit_value_estimate(const AbsorbingGame& game, std::span<const double> lambda_grid,
                                double tol) {
  if (lambda_grid.size() < 3) throw std::invalid_argument("lambda grid needs at least 3 points");
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    require_discount(lambda_grid[i]);
    if (i > 0 && !(lambda_grid[i] < lambda_grid[i - 1])) {
      throw std::invalid_argument("lambda grid must be strictly decreasing");
    }
  }
  ValueSweep out;
  out.sweep.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) out.sweep.push_back(discounted_value(game, lambda, tol));
  out.estimate = out.sweep.back().value;
  return out;
}

double limit_game_payoff(const AbsorbingGame& game, const LimitValueAction& p1,
                         const LimitValueResponse& p2) {
  const auto rows = static_cast<Eigen::Index>(game.num_actions_p1());
  const auto cols = static_cast<Eigen::Index>(game.num_actions_p2());
  if (p1.x.size() != rows || p1.alpha.size() != rows || p2.y.size() != cols ||
      p2.beta.size() != cols) {
    throw std::invalid_argument("limit game arguments do not match the game's action sets");
  }
  if ((p1.alpha.array() < 0.0).any() || (p2.beta.array() < 0.0).any()) {
    throw std::invalid_argument("absorption intensities must be nonnegative");
  }
  if (!p1.alpha.allFinite() || !p2.beta.allFinite()) {
    throw std::invalid_argument("absorption intensities must be finite");
  }
  const double numerator =
      game.reward(p1.x, p2.y) + game.g_star(p1.alpha, p2.y) + game.g_star(p1.x, p2.beta);
  const double denominator = 1.0 + game.p_star(p1.alpha, p2.y) + game.p_star(p1.x, p2.beta);
  return numerator / denominator;
}

}  // namespace blackwell
