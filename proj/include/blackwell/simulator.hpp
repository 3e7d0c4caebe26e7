#pragma once

#include "blackwell/strategy.hpp"

#include <cstdint>
#include <vector>

namespace blackwell {

struct SimReport {
  std::size_t n_plays = 0;
  double mean = 0.0;
  /// Sample standard deviation over sqrt(n_plays); 0 for a single play.
  double std_error = 0.0;
  double absorb_freq = 0.0;
  std::uint64_t seed = 0;
};

/// Number of stages simulated before truncation: the smallest T with
/// (1-lambda)^T <= 1e-10.
std::size_t simulation_horizon(double lambda);

/// Seed of the random stream of play `index`; a fixed mix of (seed, index).
std::uint64_t play_seed(std::uint64_t seed, std::uint64_t index);

/**
 * Monte Carlo estimate of the normalized lambda-discounted payoff of
 * `sigma` against stationary y.
 *
 * Each play draws its own std::mt19937_64 stream from play_seed(seed, i) and
 * runs until absorption or simulation_horizon(lambda) stages. A play absorbed
 * after stage t is credited (1-lambda)^t r(s*) for the tail. The mean and
 * deviation are pairwise sums in play order, so the report depends only on
 * the inputs.
 *
 * Throws std::invalid_argument for n_plays = 0, lambda outside (0,1) or
 * mismatched sizes.
 */
SimReport simulate(const AbsorbingGame& game, const Automaton& sigma, const Vector& y,
                   double lambda, std::size_t n_plays, std::uint64_t seed);

struct TopCountSample {
  /// histogram[k] = number of plays with exactly k stages in top_set.
  std::vector<std::size_t> histogram;
  std::size_t n_plays = 0;
};

/// Samples N, the number of stages an autonomous automaton plays a row in
/// `top_set`, over the first `max_stages` stages of each play. A play stops
/// early once no state playing `top_set` is reachable.
TopCountSample sample_top_counts(const Automaton& sigma, const std::vector<std::size_t>& top_set,
                                 std::size_t n_plays, std::uint64_t seed,
                                 std::size_t max_stages = 100000);

}  // namespace blackwell
