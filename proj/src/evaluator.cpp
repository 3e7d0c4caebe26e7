#include "blackwell/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blackwell {

namespace {

constexpr std::size_t kMaxFirstPhaseSurvival = 200000000;

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

struct InducedChain {
  Vector stage_reward;     // rbar
  Vector absorbing_gain;   // gbar
  Vector absorption;       // pbar
  Matrix survive;          // Q
};

InducedChain induced_chain(const AbsorbingGame& game, const Automaton& sigma, const Vector& y) {
  const auto rows = game.num_actions_p1();
  const auto cols = game.num_actions_p2();
  sigma.require_compatible(rows, cols);
  require_distribution(y, cols, "opponent strategy");

  const auto k = ix(sigma.size());
  InducedChain chain{Vector::Zero(k), Vector::Zero(k), Vector::Zero(k), Matrix::Zero(k, k)};
  for (std::size_t s = 0; s < sigma.size(); ++s) {
    const Vector& f = sigma.action(s);
    for (std::size_t a = 0; a < rows; ++a) {
      for (std::size_t b = 0; b < cols; ++b) {
        const double w = f[ix(a)] * y[ix(b)];
        if (w == 0.0) continue;
        chain.stage_reward[ix(s)] += w * game.reward(a, b);
        chain.absorbing_gain[ix(s)] += w * game.g_star(a, b);
        chain.absorption[ix(s)] += w * game.p_star(a, b);
        chain.survive.row(ix(s)) += w * (1.0 - game.p_star(a, b)) * sigma.next(s, a, b).transpose();
      }
    }
  }
  return chain;
}

// Minimal nonnegative solution of u = source + Q u, where source vanishes on
// states that cannot reach absorption.
Vector undiscounted_solve(const Matrix& q, const Vector& absorption, const Vector& source) {
  const auto n = static_cast<std::size_t>(q.rows());
  std::vector<bool> leaks(n, false);
  for (std::size_t i = 0; i < n; ++i) leaks[i] = absorption[ix(i)] > 0.0;
  // Backward closure: states that reach a leaking state through Q.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (leaks[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (leaks[j] && q(ix(i), ix(j)) > 0.0) {
          leaks[i] = true;
          changed = true;
          break;
        }
      }
    }
  }
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < n; ++i)
    if (leaks[i]) live.push_back(i);

  Vector out = Vector::Zero(ix(n));
  if (live.empty()) return out;
  const auto m = ix(live.size());
  Matrix system = Matrix::Identity(m, m);
  Vector rhs(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto i = live[static_cast<std::size_t>(r)];
    rhs[r] = source[ix(i)];
    for (Eigen::Index c = 0; c < m; ++c) system(r, c) -= q(ix(i), ix(live[static_cast<std::size_t>(c)]));
  }
  const Vector solved = system.partialPivLu().solve(rhs);
  for (Eigen::Index r = 0; r < m; ++r) out[ix(live[static_cast<std::size_t>(r)])] = solved[r];
  return out;
}

}  // namespace

EvalResult eval_discounted(const AbsorbingGame& game, const Automaton& sigma, const Vector& y,
                           double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("discount rate must lie in (0,1)");
  const InducedChain chain = induced_chain(game, sigma, y);
  const auto k = chain.survive.rows();

  const Matrix system = Matrix::Identity(k, k) - (1.0 - lambda) * chain.survive;
  const Vector rhs = lambda * chain.stage_reward + (1.0 - lambda) * chain.absorbing_gain;

  EvalResult out;
  out.values = system.partialPivLu().solve(rhs);
  out.gamma = sigma.mu0().dot(out.values);

  const Vector reach = undiscounted_solve(chain.survive, chain.absorption, chain.absorption);
  const Vector gain = undiscounted_solve(chain.survive, chain.absorption, chain.absorbing_gain);
  out.absorb_prob = std::clamp(sigma.mu0().dot(reach), 0.0, 1.0);
  out.terminal_mean = out.absorb_prob > 0.0 ? sigma.mu0().dot(gain) / out.absorb_prob : 0.0;
  return out;
}

double stationary_payoff(const AbsorbingGame& game, const Vector& x, const Vector& y,
                         double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("discount rate must lie in (0,1)");
  require_distribution(x, game.num_actions_p1(), "stationary strategy");
  require_distribution(y, game.num_actions_p2(), "opponent strategy");
  const double numerator = lambda * game.reward(x, y) + (1.0 - lambda) * game.g_star(x, y);
  const double denominator = 1.0 - (1.0 - lambda) * (1.0 - game.p_star(x, y));
  return numerator / denominator;
}

std::vector<double> default_limit_grid() { return {1e-2, 1e-4, 1e-6}; }

LimitEvaluation eval_limit(const AbsorbingGame& game, const Automaton& sigma, const Vector& y,
                           std::span<const double> lambda_grid) {
  if (lambda_grid.empty()) throw std::invalid_argument("lambda grid is empty");
  for (std::size_t i = 1; i < lambda_grid.size(); ++i) {
    if (!(lambda_grid[i] < lambda_grid[i - 1])) {
      throw std::invalid_argument("lambda grid must be strictly decreasing");
    }
  }
  if (lambda_grid.back() > 1e-6) {
    throw std::invalid_argument("lambda grid must reach 1e-6 or below");
  }
  LimitEvaluation out;
  for (double lambda : lambda_grid) {
    out.lambdas.push_back(lambda);
    out.sweep.push_back(eval_discounted(game, sigma, y, lambda).gamma);
  }
  out.value = out.sweep.back();
  return out;
}

double blind_limit_payoff(const std::function<double(double)>& generating, const Vector& y) {
  require_distribution(y, 3, "y over {Left, Middle, Right}");
  const double left = y[0];
  const double middle = y[1];
  const double right = y[2];
  if (left + middle == 0.0) return 0.5;
  const double g = generating(right);
  return (1.0 - g) * left / (left + middle) + g * (middle + 0.5 * right);
}

FirstPhaseSurvival first_phase_survival(const AbsorbingGame& game, const SigmaEps& s, const Vector& y) {
  if (s.kind != SigmaEps::Kind::two_phase) {
    throw std::invalid_argument("identity applies to two-phase strategies only");
  }
  require_distribution(y, game.num_actions_p2(), "opponent strategy");
  const Vector in_a_star = indicator(game.num_actions_p1(), classify(game).a_star);
  for (Eigen::Index a = 0; a < s.x_alpha.size(); ++a) {
    if (s.x_alpha[a] > 0.0 && in_a_star[a] == 0.0) {
      throw std::invalid_argument("first-phase action must be supported on A*");
    }
  }

  // Neumaier-compensated sum of delta (1-delta)^k rho^k.
  const double rho = 1.0 - game.p_star(s.x_alpha, y);
  const double ratio = (1.0 - s.delta) * rho;
  FirstPhaseSurvival out;
  double term = s.delta;
  double sum = 0.0;
  double compensation = 0.0;
  while (term > 1e-20) {
    const double t = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    term *= ratio;
    if (++out.terms > kMaxFirstPhaseSurvival) throw std::runtime_error("geometric series did not settle");
  }
  out.lhs = sum + compensation;
  out.rhs = 1.0 / (1.0 + game.p_star(s.alpha, y));
  return out;
}

}  // namespace blackwell
