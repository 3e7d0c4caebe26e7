#pragma once

#include "blackwell/strategy.hpp"

#include <functional>
#include <span>
#include <vector>

namespace blackwell {

struct EvalResult {
  double gamma = 0.0;
  /// Discounted payoff from each internal state, before the first stage.
  Vector values;
  /// Probability that play is ever absorbed.
  double absorb_prob = 0.0;
  /// Expected absorbing payoff given absorption; 0 when absorb_prob = 0.
  double terminal_mean = 0.0;
};

/**
 * Exact lambda-discounted payoff of automaton `sigma` against stationary y.
 *
 * Solves W(k) = lambda rbar(k) + (1-lambda)[gbar(k) + sum_k' Q(k,k') W(k')]
 * where, averaging over f(k) and y, rbar is the stage reward, gbar the
 * expected absorbing payoff and Q the non-absorbed internal transition.
 * I - (1-lambda) Q is strictly diagonally dominant, so the direct solve is
 * always well posed.
 */
EvalResult eval_discounted(const AbsorbingGame& game, const Automaton& sigma, const Vector& y,
                           double lambda);

/// Closed form for a stationary x against y:
/// (lambda r(x,y) + (1-lambda) g*(x,y)) / (1 - (1-lambda)(1 - p*(x,y))).
double stationary_payoff(const AbsorbingGame& game, const Vector& x, const Vector& y,
                         double lambda);

struct LimitEvaluation {
  double value = 0.0;
  std::vector<double> lambdas;
  std::vector<double> sweep;
};

/// Limit payoff estimated by the evaluation at the smallest rate of a
/// decreasing grid whose last point is at most 1e-6; the full sweep is
/// returned alongside.
LimitEvaluation eval_limit(const AbsorbingGame& game, const Automaton& sigma, const Vector& y,
                           std::span<const double> lambda_grid);

/// Default grid for eval_limit: 1e-2, 1e-4, 1e-6.
std::vector<double> default_limit_grid();

/**
 * Limit payoff of a blind strategy in the modified Big Match from the law of
 * N through its generating function:
 * (1 - G(y_R)) y_L / (y_L + y_M) + G(y_R) (y_M + y_R / 2).
 * Returns 1/2 when y_L + y_M = 0.
 */
double blind_limit_payoff(const std::function<double(double)>& generating, const Vector& y);

struct FirstPhaseSurvival {
  /// E[(1 - p*(x_alpha,y))^D] summed term by term over the geometric law of D.
  double lhs = 0.0;
  /// 1 / (1 + p*(alpha,y)).
  double rhs = 0.0;
  std::size_t terms = 0;
};

/// Probability that the first phase of a two-phase strategy ends without
/// absorption, computed two ways. Throws std::invalid_argument unless `s` is
/// two-phase with x_alpha supported on A*.
FirstPhaseSurvival first_phase_survival(const AbsorbingGame& game, const SigmaEps& s, const Vector& y);

}  // namespace blackwell
