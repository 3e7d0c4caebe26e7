#pragma once

#include "blackwell/game.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace blackwell {

/**
 * A finite automaton strategy (K, mu0, pi, f) for player 1.
 *
 * Internal state k plays the mixed action f(k); after the stage the next
 * internal state is drawn from pi(.|k,a,b). An autonomous automaton stores a
 * single transition row per internal state, shared by all action pairs.
 */
class Automaton {
 public:
  /// Transitions ignore the actions: `transition[k]` is pi(.|k).
  static Automaton autonomous(std::vector<std::string> states, Vector mu0,
                              std::vector<Vector> transition, std::vector<Vector> action_map);

  /// Action-dependent transitions, `transition[(k*|A| + a)*|B| + b]` = pi(.|k,a,b).
  static Automaton reactive(std::vector<std::string> states, Vector mu0,
                            std::vector<Vector> transition, std::vector<Vector> action_map,
                            std::size_t num_opponent_actions);

  std::size_t size() const { return states_.size(); }
  bool is_autonomous() const { return autonomous_; }
  /// |A|, the length of every f(k).
  std::size_t num_actions() const { return num_actions_; }
  /// |B| for reactive automata; 0 for autonomous ones (any |B| works).
  std::size_t num_opponent_actions() const { return num_opponent_actions_; }

  const std::vector<std::string>& states() const { return states_; }
  const Vector& mu0() const { return mu0_; }
  const Vector& action(std::size_t k) const { return action_map_[k]; }
  const Vector& next(std::size_t k, std::size_t a, std::size_t b) const;
  /// pi(.|k) of an autonomous automaton. Throws std::logic_error otherwise.
  const Vector& next(std::size_t k) const;

  /// Throws std::invalid_argument unless the automaton can play in a game
  /// with `rows` x `cols` actions.
  void require_compatible(std::size_t rows, std::size_t cols) const;

 private:
  Automaton() = default;
  void validate() const;

  std::vector<std::string> states_;
  Vector mu0_;
  std::vector<Vector> transition_;
  std::vector<Vector> action_map_;
  std::size_t num_actions_ = 0;
  std::size_t num_opponent_actions_ = 0;
  bool autonomous_ = true;
};

/// Eventually-stationary Markovian strategy: prefix[t] at stage t+1, then
/// `tail` forever.
struct MarkovianStrategy {
  std::vector<Vector> prefix;
  Vector tail;
};

/// A one-state automaton repeating x.
Automaton stationary_automaton(const Vector& x);

/// One clock state per prefix stage plus one for the tail.
Automaton to_automaton(const MarkovianStrategy& m);

/// Per-stage probability of playing a row in `top_set`: the prefix values
/// followed by the tail value.
std::vector<double> top_probabilities(const MarkovianStrategy& m,
                                      const std::vector<std::size_t>& top_set);
double tail_top_probability(const MarkovianStrategy& m, const std::vector<std::size_t>& top_set);

/// Two-state autonomous automaton on {Top, Bottom}: start uniformly, play
/// the state's label, from Top redraw uniformly, Bottom is absorbing. The
/// number of Top plays is geometric with parameter 1/2.
Automaton sigma_star();

/// The size-2 strategy built from the discounted optimal strategy.
struct SigmaEps {
  enum class Kind { stationary, two_phase };

  Kind kind = Kind::stationary;
  /// Stationary action, or the action played once the first phase ends.
  Vector x;
  /// First-phase action alpha / alpha_bar (two-phase only).
  Vector x_alpha;
  /// Absorption intensities alpha, supported on A* (two-phase only).
  Vector alpha;
  double alpha_bar = 0.0;
  /// Parameter of the geometric first-phase length, 1 / (1 + alpha_bar).
  double delta = 1.0;

  double eta = 0.0;
  double lambda_probe = 0.0;
  /// x_lambda(A*) at the probe.
  double absorbing_mass = 0.0;
  /// Whether re-probing at lambda_probe / 10 selects the same branch.
  bool branch_stable = true;

  /// Size-1 automaton when stationary; otherwise states {k_alpha, k*} with
  /// mu0(k*) = delta, k_alpha -> k* with probability delta, k* absorbing.
  Automaton automaton() const;
};

/// Mass below which x_lambda(A*) is treated as vanishing with lambda.
inline constexpr double kStationaryBranchThreshold = 0.1;

/**
 * Builds the size-2 autonomous strategy for a product absorbing game from
 * the discounted optimal strategy x_lambda at `lambda_probe`:
 * alpha(a) = x_lambda(a) / lambda on A*, x = x_lambda restricted to A \ A*.
 * Falls back to the stationary strategy x_lambda when x_lambda(A*) is at
 * least kStationaryBranchThreshold or alpha vanishes.
 *
 * Throws std::invalid_argument when the game is not product absorbing.
 */
SigmaEps construct_sigma_eps(const AbsorbingGame& game, double eps, double lambda_probe);

struct GeneratingFunctionResult {
  double value = 0.0;
  std::size_t iterations = 0;
  /// Size of the last update; bounds the error when the iteration contracts.
  double last_step = 0.0;
};

inline constexpr std::size_t kGeneratingFunctionMaxIterations = 1000000;

/**
 * E[q^N] for an autonomous automaton, N the number of stages whose action
 * lies in `top_set`. Computed as the monotone limit of the finite-horizon
 * iteration h_{T+1}(k) = phi_k(q) sum_k' pi(k'|k) h_T(k'), h_0 = 1, with
 * phi_k(q) = sum_a f(k)(a) q^{1[a in top_set]}; stops once successive
 * iterates differ by less than 1e-12 or after
 * kGeneratingFunctionMaxIterations steps.
 *
 * Throws std::invalid_argument for reactive automata or q outside [0,1).
 */
GeneratingFunctionResult generating_function_detail(const Automaton& sigma,
                                                    const std::vector<std::size_t>& top_set,
                                                    double q);
double generating_function(const Automaton& sigma, const std::vector<std::size_t>& top_set,
                           double q);

/// E[N] for an autonomous automaton; +infinity when a recurrent class
/// reachable from mu0 plays `top_set` with positive probability.
double expected_top_count(const Automaton& sigma, const std::vector<std::size_t>& top_set);

/// Partial sums of P(play in top_set at stage t), t = 1..horizon, with the
/// probability at the final stage.
struct TopPlaySeries {
  double partial_sum = 0.0;
  double last_term = 0.0;
};
TopPlaySeries top_play_series(const Automaton& sigma, const std::vector<std::size_t>& top_set,
                              std::size_t horizon);

struct GeometricLawReport {
  std::vector<double> q_grid;
  std::vector<double> generating_values;
  std::vector<double> deviations;  ///< |E[q^N] - 1/(2-q)|
  double max_deviation = 0.0;
  double expected_count = 0.0;
  /// Necessary condition for eps-optimality: max_deviation <= 2 eps.
  bool necessary_condition = false;
  /// Sufficient condition: every deviation <= 1e-9 and E[N] finite.
  bool exact_geometric = false;
};

inline constexpr double kExactGeometricTolerance = 1e-9;

/// Compares E[q^N] against the geometric(1/2) target 1/(2-q) over a grid.
GeometricLawReport geometric_law_check(const Automaton& sigma, const std::vector<std::size_t>& top_set,
                                  double eps, const std::vector<double>& q_grid);

/// A strategy as read from a strategy file.
using Strategy = std::variant<Vector, MarkovianStrategy, Automaton>;

Automaton as_automaton(const Strategy& strategy);

nlohmann::json strategy_to_json(const Strategy& strategy);
Strategy strategy_from_json(const nlohmann::json& doc);
Strategy load_strategy(const std::filesystem::path& path);
void save_strategy(const Strategy& strategy, const std::filesystem::path& path);

}  // namespace blackwell
