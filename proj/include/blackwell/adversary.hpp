#pragma once

#include "blackwell/evaluator.hpp"

#include <string>
#include <utility>
#include <vector>

namespace blackwell {

/// All points of the simplex over `dim` coordinates whose entries are
/// multiples of 1/divisions, in lexicographic order of the integer counts.
std::vector<Vector> simplex_grid(std::size_t dim, std::size_t divisions);

struct BestResponse {
  Vector y;
  double gamma = 0.0;
  std::size_t evaluations = 0;
};

/**
 * Searches Delta(B) for a stationary y minimizing gamma_lambda(sigma, y).
 *
 * Candidates: the simplex grid of mesh `grid_step`, every pure column, and
 * for three-column games the one-parameter families (0,1-q,q), (1-q,0,q),
 * (q,0,1-q) and (0,1-eta,eta) at q on the grid and on 10^-1..10^-8. The best
 * candidate is then polished by pairwise mass transfers with the step
 * halved from grid_step down to 1e-6. Equal payoffs are broken toward the
 * lexicographically smaller y.
 */
BestResponse best_response_search(const AbsorbingGame& game, const Automaton& sigma,
                                  double lambda, double grid_step);

/// An adversary together with a closed-form upper bound on the limit payoff
/// it concedes, and the terms of the inequality chain behind the bound.
struct CertifiedBound {
  Vector y;
  double bound = 0.0;
  std::string case_label;
  std::vector<std::pair<std::string, double>> terms;

  /// Value of a named certificate term; throws std::out_of_range if absent.
  double term(const std::string& name) const;
};

/// e^{-qc}(1+q)/2 - q^2 c^2: the constant certified by the direct
/// decomposition of the payoff against (q, 0, 1-q).
double psi(double c, double q);

/// e^{-qx}(1/2 + q) - q^2 x^2, reported next to psi for comparison.
double reference_phi(double x, double q);

struct AdversaryConstants {
  double c = 0.0;
  double q = 0.0;
  double eps_star = 0.0;
};

/// Grid search over c in [0.70, 0.99] (step 0.01) and q in (0, 0.5] (step
/// 0.005) maximizing eps_star = min(psi(c,q) - 1/2, 1/2 - e^{-c}).
AdversaryConstants choose_constants();

/**
 * Certified adversary against an eventually-stationary Markovian strategy in
 * the modified Big Match (rows Top, Bottom; columns Left, Middle, Right).
 *
 * With s the total Top probability: if the tail plays Top, s is infinite and
 * Middle concedes 0; if s >= c, Middle concedes at most e^{-s}; otherwise
 * (q, 0, 1-q) concedes at most (1-q)/2 + [1 - e^{-qs} + (qs)^2](1+q)/2.
 *
 * Throws std::invalid_argument when c <= ln 2, q outside (0,1), or the
 * strategy is not over two actions.
 */
CertifiedBound markovian_adversary(const MarkovianStrategy& m, double c, double q);

struct LeCamReport {
  double max_deviation = 0.0;
  /// sum of squared parameters
  double bound = 0.0;
  std::vector<double> exact;    ///< P(N = k), k = 0..k_max
  std::vector<double> poisson;  ///< Poisson(sum q_t) at k = 0..k_max
};

/// Exact law of a sum of independent Bernoulli(q_t) by dynamic programming,
/// compared pointwise with the Poisson law of the same mean up to k_max.
LeCamReport lecam_check(const std::vector<double>& params, std::size_t k_max);

inline constexpr std::size_t kFirstTopSearchCap = 100000;

/**
 * Certified adversary against an autonomous automaton in the blind-trap game
 * (rows Top, Bottom; columns Left, Middle, Right).
 *
 * P(N>0) >= 2/3: Middle, bound P(N=0). P(N>0) <= 1/3: Left, bound P(N>0).
 * Otherwise: the first horizon T with P(first Top <= T) >= P(N>0) - eps_inner,
 * eta = eps_inner / T, y = (0, 1-eta, eta), bound 1/3 + eps_inner.
 *
 * Throws std::invalid_argument for reactive automata and std::runtime_error
 * when no horizon within kFirstTopSearchCap stages qualifies.
 */
CertifiedBound blind_adversary_trap(const Automaton& sigma, double eps_inner);

}  // namespace blackwell
