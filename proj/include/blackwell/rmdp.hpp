#pragma once

#include "blackwell/game.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace blackwell {

/**
 * A finite zero-sum stochastic game. Player 1 has the same action set in
 * every state; player 2's action set may depend on the state.
 *
 * reward[s] is |A| x |B_s|; transition[s][a * |B_s| + b] is the law of the
 * next state.
 */
struct StochasticGame {
  std::vector<std::string> states;
  std::vector<std::string> actions_p1;
  std::vector<std::vector<std::string>> actions_p2;
  std::vector<Matrix> reward;
  std::vector<std::vector<Vector>> transition;

  std::size_t num_states() const { return states.size(); }
  std::size_t num_actions_p2(std::size_t s) const { return actions_p2[s].size(); }
  const Vector& next(std::size_t s, std::size_t a, std::size_t b) const {
    return transition[s][a * actions_p2[s].size() + b];
  }

  /// Throws std::invalid_argument on inconsistent sizes, empty action sets,
  /// non-finite rewards or transitions that are not distributions.
  void validate() const;
};

/**
 * An s-rectangular polyhedral robust MDP. The uncertainty set at s is the
 * convex hull of extreme_points[s]; each extreme point is an |A| x |S|
 * matrix whose row a is the law of the next state under action a.
 * reward[s](a, s') is the reward earned on the transition s -> s' under a.
 */
struct RmdpInstance {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::vector<Matrix> reward;
  std::vector<std::vector<Matrix>> extreme_points;

  std::size_t num_states() const { return states.size(); }

  /// Throws std::invalid_argument on inconsistent sizes, an empty extreme
  /// point list or rows that are not distributions.
  void validate() const;
};

/// Player 2's actions at s are the extreme points of U_s; the reward of
/// (s, a, b) is the expectation of r(s, a, s') under extreme point b.
StochasticGame rmdp_to_game(const RmdpInstance& m);

inline constexpr std::size_t kAugmentationCap = 10;

/**
 * The robust MDP whose extreme points at s are player 2's actions.
 *
 * When every (s, a) admits successor rewards r(s, a, s') reproducing
 * r(s, a, b) in expectation for all b, the state space is kept. Otherwise
 * each state is duplicated once per reward class: copy (s', c) behaves like
 * s' and is entered with reward equal to the c-th distinct value of
 * r(s, a, .). The original states keep indices 0..|S|-1 and copies follow.
 *
 * Throws std::runtime_error if more than kAugmentationCap copies per state
 * would be needed.
 */
RmdpInstance game_to_rmdp(const StochasticGame& g);

/// One non-absorbing state "play" followed by one self-looping state per
/// absorbing state, in which player 2 has the single action "stay".
StochasticGame absorbing_to_stochastic(const AbsorbingGame& game);

/// Inverse of absorbing_to_stochastic. Throws std::invalid_argument unless
/// exactly one state is non-absorbing.
AbsorbingGame stochastic_to_absorbing(const StochasticGame& g);

inline constexpr double kDefaultShapleyTolerance = 1e-12;

/// Discounted value of every state by iterating the Shapley operator with
/// the simplex matrix-game solver, until successive iterates differ by less
/// than tol * lambda.
Vector shapley_value(const StochasticGame& g, double lambda,
                     double tol = kDefaultShapleyTolerance);

/**
 * Value of max_x min_y x' M y by enumerating square equalizing systems: for
 * every pair of equal-size row and column subsets, the row strategy on the
 * rows that equalizes the columns. The value is the best guarantee among
 * nonnegative solutions. Exponential in the matrix size; meant as an
 * independent check on small matrices.
 */
double matrix_game_value_by_enumeration(const Matrix& payoff);

/// Robust discounted value of every state: player 1 maximizes against the
/// worst mixture of extreme points, computed by value iteration with
/// matrix_game_value_by_enumeration.
Vector robust_value(const RmdpInstance& m, double lambda,
                    double tol = kDefaultShapleyTolerance);

/// Discounted payoff from each state of the stationary policy x[s] when
/// player 2 always plays column choice[s].
Vector policy_payoff(const StochasticGame& g, const std::vector<Vector>& x,
                     const std::vector<std::size_t>& choice, double lambda);

/// Discounted payoff from each state of the stationary policy x[s] when
/// nature always picks extreme point choice[s].
Vector policy_payoff(const RmdpInstance& m, const std::vector<Vector>& x,
                     const std::vector<std::size_t>& choice, double lambda);

nlohmann::json stochastic_game_to_json(const StochasticGame& g);
StochasticGame stochastic_game_from_json(const nlohmann::json& doc);
nlohmann::json rmdp_to_json(const RmdpInstance& m);
RmdpInstance rmdp_from_json(const nlohmann::json& doc);

/// Reads a JSON document; throws std::invalid_argument if unreadable.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace blackwell
