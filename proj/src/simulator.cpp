#include "blackwell/simulator.hpp"

#include <cmath>
#include <random>
#include <span>
#include <stdexcept>

namespace blackwell {

namespace {

constexpr double kTruncationMass = 1e-10;

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Index drawn with probability proportional to p; p need not sum to one.
std::size_t draw(const Vector& p, std::mt19937_64& rng, double total = 1.0) {
  const double u = uniform01(rng) * total;
  double cumulative = 0.0;
  std::size_t last = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    cumulative += p[i];
    last = static_cast<std::size_t>(i);
    if (u < cumulative) return last;
  }
  return last;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  const auto half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace

std::size_t simulation_horizon(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("discount rate must lie in (0,1)");
  return static_cast<std::size_t>(std::ceil(std::log(kTruncationMass) / std::log1p(-lambda)));
}

std::uint64_t play_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) + index);
}

SimReport simulate(const AbsorbingGame& game, const Automaton& sigma, const Vector& y,
                   double lambda, std::size_t n_plays, std::uint64_t seed) {
  if (n_plays == 0) throw std::invalid_argument("need at least one play");
  const auto horizon = simulation_horizon(lambda);
  const auto cols = game.num_actions_p2();
  sigma.require_compatible(game.num_actions_p1(), cols);
  require_distribution(y, cols, "opponent strategy");

  std::vector<double> payoffs(n_plays);
  std::size_t absorbed = 0;
  for (std::size_t i = 0; i < n_plays; ++i) {
    std::mt19937_64 rng(play_seed(seed, i));
    std::size_t k = draw(sigma.mu0(), rng);
    double total = 0.0;
    double weight = lambda;  // lambda (1-lambda)^{t-1}
    double remaining = 1.0;  // (1-lambda)^t after stage t
    for (std::size_t t = 0; t < horizon; ++t) {
      const auto a = draw(sigma.action(k), rng);
      const auto b = draw(y, rng);
      total += weight * game.reward(a, b);
      weight *= 1.0 - lambda;
      remaining *= 1.0 - lambda;
      const double p = game.p_star(a, b);
      if (p > 0.0 && uniform01(rng) < p) {
        const auto s = draw(game.absorption(a, b), rng, p);
        total += remaining * game.absorbing_states()[s].payoff;
        ++absorbed;
        break;
      }
      k = draw(sigma.next(k, a, b), rng);
    }
    payoffs[i] = total;
  }

  SimReport out;
  out.n_plays = n_plays;
  out.seed = seed;
  out.mean = pairwise_sum(payoffs) / static_cast<double>(n_plays);
  if (n_plays > 1) {
    std::vector<double> squares(n_plays);
    for (std::size_t i = 0; i < n_plays; ++i) squares[i] = (payoffs[i] - out.mean) * (payoffs[i] - out.mean);
    const double variance = pairwise_sum(squares) / static_cast<double>(n_plays - 1);
    out.std_error = std::sqrt(variance / static_cast<double>(n_plays));
  }
  out.absorb_freq = static_cast<double>(absorbed) / static_cast<double>(n_plays);
  return out;
}

TopCountSample sample_top_counts(const Automaton& sigma, const std::vector<std::size_t>& top_set,
                                 std::size_t n_plays, std::uint64_t seed, std::size_t max_stages) {
  if (!sigma.is_autonomous()) throw std::invalid_argument("sampling N needs an autonomous automaton");
  const Vector top = indicator(sigma.num_actions(), top_set);
  // live[k]: a state playing top_set is reachable from k, so N can still grow.
  const auto n = sigma.size();
  std::vector<bool> live(n, false);
  for (std::size_t k = 0; k < n; ++k) live[k] = sigma.action(k).dot(top) > 0.0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (live[k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (live[j] && sigma.next(k)[ix(j)] > 0.0) {
          live[k] = true;
          changed = true;
          break;
        }
      }
    }
  }
  TopCountSample out;
  out.n_plays = n_plays;
  for (std::size_t i = 0; i < n_plays; ++i) {
    std::mt19937_64 rng(play_seed(seed, i));
    std::size_t k = draw(sigma.mu0(), rng);
    std::size_t count = 0;
    for (std::size_t t = 0; t < max_stages && live[k]; ++t) {
      if (top[ix(draw(sigma.action(k), rng))] > 0.0) ++count;
      k = draw(sigma.next(k), rng);
    }
    if (out.histogram.size() <= count) out.histogram.resize(count + 1, 0);
    ++out.histogram[count];
  }
  return out;
}

}  // namespace blackwell
