#pragma once

#include "blackwell/rmdp.hpp"
#include "blackwell/strategy.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace blackwell {

/// Seeded source of random test instances. Draws are built from raw
/// std::mt19937_64 output, so a seed yields the same instances everywhere.
class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0,1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n-1}.
  std::size_t index(std::size_t n);
  bool coin(double p) { return uniform() < p; }
  /// Flat Dirichlet sample.
  Vector simplex(std::size_t n);
  /// Dirichlet sample on a random nonempty support.
  Vector sparse_simplex(std::size_t n);
  /// Random nonempty subset of {0, ..., n-1}, sorted.
  std::vector<std::size_t> subset(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// Rewards and absorbing payoffs in [0,1]; each entry absorbs with
/// probability 0, or a random amount in (0,1], split over the states.
AbsorbingGame random_absorbing_game(InstanceRng& rng, std::size_t rows, std::size_t cols,
                                    std::size_t absorbing_states);

/// Product absorbing game with random nonempty A* and B*; entries of
/// A* x B* absorb with probability in [0.2, 1] into two states with payoffs
/// in [0,1]. Stage rewards lie in [0,1].
AbsorbingGame random_product_game(InstanceRng& rng, std::size_t rows, std::size_t cols);

/// Autonomous automaton with 1..max_states states and sparse random rows.
Automaton random_autonomous(InstanceRng& rng, std::size_t max_states, std::size_t actions);

/// Reactive automaton with 1..max_states states.
Automaton random_reactive(InstanceRng& rng, std::size_t max_states, std::size_t rows,
                          std::size_t cols);

/// Strategy over {Top, Bottom} with a prefix of 0..max_prefix stages mixing
/// zero, small and arbitrary Top probabilities, and a tail that is either
/// pure Bottom or plays Top with probability 0.1.
MarkovianStrategy random_markovian(InstanceRng& rng, std::size_t max_prefix);

/// Stochastic game on `states` states with two player 1 actions and 1..3
/// player 2 actions per state. With `shared_laws`, some columns repeat an
/// earlier column's transitions with a different reward.
StochasticGame random_stochastic_game(InstanceRng& rng, std::size_t states, bool shared_laws);

}  // namespace blackwell
