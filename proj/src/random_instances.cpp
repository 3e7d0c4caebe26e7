#include "blackwell/random_instances.hpp"

#include <cmath>

namespace blackwell {

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

double InstanceRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t InstanceRng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n));
}

Vector InstanceRng::simplex(std::size_t n) {
  Vector v(ix(n));
  for (std::size_t i = 0; i < n; ++i) v[ix(i)] = -std::log1p(-uniform());
  if (v.sum() <= 0.0) return uniform_distribution(n);
  return v / v.sum();
}

Vector InstanceRng::sparse_simplex(std::size_t n) {
  const auto support = subset(n);
  const Vector weights = simplex(support.size());
  Vector v = Vector::Zero(ix(n));
  for (std::size_t i = 0; i < support.size(); ++i) v[ix(support[i])] = weights[ix(i)];
  return v;
}

std::vector<std::size_t> InstanceRng::subset(std::size_t n) {
  std::vector<std::size_t> out;
  while (out.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (coin(0.5)) out.push_back(i);
    }
  }
  return out;
}

AbsorbingGame random_absorbing_game(InstanceRng& rng, std::size_t rows, std::size_t cols,
                                    std::size_t absorbing_states) {
  std::vector<std::string> actions_p1;
  std::vector<std::string> actions_p2;
  for (std::size_t a = 0; a < rows; ++a) actions_p1.push_back("a" + std::to_string(a));
  for (std::size_t b = 0; b < cols; ++b) actions_p2.push_back("b" + std::to_string(b));
  std::vector<AbsorbingState> states;
  for (std::size_t s = 0; s < absorbing_states; ++s) {
    states.push_back({"s" + std::to_string(s) + "*", rng.uniform()});
  }
  Matrix reward(ix(rows), ix(cols));
  std::vector<Vector> absorption;
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t b = 0; b < cols; ++b) {
      reward(ix(a), ix(b)) = rng.uniform();
      if (absorbing_states > 0 && rng.coin(0.5)) {
        absorption.push_back(rng.uniform(0.05, 1.0) * rng.sparse_simplex(absorbing_states));
      } else {
        absorption.push_back(Vector::Zero(ix(absorbing_states)));
      }
    }
  }
  return AbsorbingGame(std::move(actions_p1), std::move(actions_p2), std::move(reward),
                       std::move(states), std::move(absorption));
}

AbsorbingGame random_product_game(InstanceRng& rng, std::size_t rows, std::size_t cols) {
  const Vector in_a = indicator(rows, rng.subset(rows));
  const Vector in_b = indicator(cols, rng.subset(cols));
  std::vector<std::string> actions_p1;
  std::vector<std::string> actions_p2;
  for (std::size_t a = 0; a < rows; ++a) actions_p1.push_back("a" + std::to_string(a));
  for (std::size_t b = 0; b < cols; ++b) actions_p2.push_back("b" + std::to_string(b));
  std::vector<AbsorbingState> states{{"u*", rng.uniform()}, {"w*", rng.uniform()}};
  Matrix reward(ix(rows), ix(cols));
  std::vector<Vector> absorption;
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t b = 0; b < cols; ++b) {
      reward(ix(a), ix(b)) = rng.uniform();
      if (in_a[ix(a)] > 0.0 && in_b[ix(b)] > 0.0) {
        absorption.push_back(rng.uniform(0.2, 1.0) * rng.simplex(2));
      } else {
        absorption.push_back(Vector::Zero(2));
      }
    }
  }
  return AbsorbingGame(std::move(actions_p1), std::move(actions_p2), std::move(reward),
                       std::move(states), std::move(absorption));
}

namespace {

std::vector<std::string> state_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back("k" + std::to_string(k));
  return out;
}

// Pure or mixed, each with positive probability.
Vector random_action(InstanceRng& rng, std::size_t actions) {
  if (rng.coin(0.3)) return point_mass(actions, rng.index(actions));
  return rng.simplex(actions);
}

}  // namespace

Automaton random_autonomous(InstanceRng& rng, std::size_t max_states, std::size_t actions) {
  const auto n = 1 + rng.index(max_states);
  std::vector<Vector> transition;
  std::vector<Vector> action_map;
  for (std::size_t k = 0; k < n; ++k) {
    transition.push_back(rng.sparse_simplex(n));
    action_map.push_back(random_action(rng, actions));
  }
  return Automaton::autonomous(state_labels(n), rng.sparse_simplex(n), std::move(transition),
                               std::move(action_map));
}

Automaton random_reactive(InstanceRng& rng, std::size_t max_states, std::size_t rows,
                          std::size_t cols) {
  const auto n = 1 + rng.index(max_states);
  std::vector<Vector> transition;
  std::vector<Vector> action_map;
  for (std::size_t k = 0; k < n; ++k) {
    action_map.push_back(random_action(rng, rows));
    for (std::size_t e = 0; e < rows * cols; ++e) transition.push_back(rng.sparse_simplex(n));
  }
  return Automaton::reactive(state_labels(n), rng.sparse_simplex(n), std::move(transition),
                             std::move(action_map), cols);
}

MarkovianStrategy random_markovian(InstanceRng& rng, std::size_t max_prefix) {
  MarkovianStrategy m;
  const auto length = rng.index(max_prefix + 1);
  // Regime of the prefix: mostly Bottom, light Top, or arbitrary.
  const auto regime = rng.index(3);
  for (std::size_t t = 0; t < length; ++t) {
    double top = 0.0;
    if (regime == 1) top = rng.coin(0.5) ? rng.uniform(0.0, 0.05) : 0.0;
    if (regime == 2) top = rng.uniform();
    if (regime == 0 && rng.coin(0.1)) top = rng.uniform(0.0, 0.3);
    m.prefix.push_back(make_vector({top, 1.0 - top}));
  }
  m.tail = rng.coin(0.5) ? make_vector({0.0, 1.0}) : make_vector({0.1, 0.9});
  return m;
}

StochasticGame random_stochastic_game(InstanceRng& rng, std::size_t states, bool shared_laws) {
  StochasticGame g;
  for (std::size_t s = 0; s < states; ++s) g.states.push_back("s" + std::to_string(s));
  g.actions_p1 = {"a0", "a1"};
  for (std::size_t s = 0; s < states; ++s) {
    const auto cols = 1 + rng.index(3);
    std::vector<std::string> labels;
    for (std::size_t b = 0; b < cols; ++b) labels.push_back("b" + std::to_string(b));
    Matrix reward(2, ix(cols));
    std::vector<Vector> transition(2 * cols);
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < cols; ++b) {
        reward(ix(a), ix(b)) = rng.uniform();
        if (shared_laws && b > 0 && rng.coin(0.5)) {
          transition[a * cols + b] = transition[a * cols + b - 1];
        } else {
          transition[a * cols + b] = rng.sparse_simplex(states);
        }
      }
    }
    g.actions_p2.push_back(std::move(labels));
    g.reward.push_back(std::move(reward));
    g.transition.push_back(std::move(transition));
  }
  g.validate();
  return g;
}

}  // namespace blackwell
