#include "blackwell/rmdp.hpp"

#include "blackwell/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace blackwell {

namespace {

constexpr std::size_t kMaxValueIterations = 1000000;
constexpr double kRewardFitTolerance = 1e-10;

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

std::size_t find_label(const std::vector<std::string>& labels, const std::string& name,
                       const std::string& what) {
  auto it = std::find(labels.begin(), labels.end(), name);
  if (it == labels.end()) throw std::invalid_argument("unknown " + what + " '" + name + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

void require_unique(const std::vector<std::string>& labels, const std::string& what) {
  require(!labels.empty(), what + " must be nonempty");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    require(!labels[i].empty(), what + " labels must be nonempty");
    for (std::size_t j = 0; j < i; ++j) require(labels[i] != labels[j], "duplicate " + what + " '" + labels[i] + "'");
  }
}

// All size-k subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// Sparse {label: probability} map over `labels`.
nlohmann::json distribution_to_json(const Vector& p, const std::vector<std::string>& labels) {
  auto out = nlohmann::json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (p[ix(i)] != 0.0) out[labels[i]] = p[ix(i)];
  }
  return out;
}

Vector distribution_from_json(const nlohmann::json& doc, const std::vector<std::string>& labels) {
  Vector p = Vector::Zero(ix(labels.size()));
  for (const auto& [name, prob] : doc.items()) p[ix(find_label(labels, name, "state"))] = prob.get<double>();
  return p;
}

}  // namespace

void StochasticGame::validate() const {
  require_unique(states, "state");
  require_unique(actions_p1, "player 1 action");
  const auto n = states.size();
  require(actions_p2.size() == n && reward.size() == n && transition.size() == n,
          "stochastic game needs per-state player 2 actions, rewards and transitions");
  for (std::size_t s = 0; s < n; ++s) {
    require_unique(actions_p2[s], "player 2 action");
    require(reward[s].rows() == ix(actions_p1.size()) && reward[s].cols() == ix(actions_p2[s].size()),
            "reward at state '" + states[s] + "' has the wrong shape");
    require(reward[s].allFinite(), "rewards must be finite");
    require(transition[s].size() == actions_p1.size() * actions_p2[s].size(),
            "transition at state '" + states[s] + "' has the wrong number of entries");
    for (const auto& p : transition[s]) require_distribution(p, n, "transition law");
  }
}

void RmdpInstance::validate() const {
  require_unique(states, "state");
  require_unique(actions, "action");
  const auto n = states.size();
  require(reward.size() == n && extreme_points.size() == n,
          "robust MDP needs per-state rewards and extreme points");
  for (std::size_t s = 0; s < n; ++s) {
    require(reward[s].rows() == ix(actions.size()) && reward[s].cols() == ix(n),
            "reward at state '" + states[s] + "' has the wrong shape");
    require(reward[s].allFinite(), "rewards must be finite");
    require(!extreme_points[s].empty(), "state '" + states[s] + "' has no extreme points");
    for (const auto& point : extreme_points[s]) {
      require(point.rows() == ix(actions.size()) && point.cols() == ix(n),
              "extreme point at state '" + states[s] + "' has the wrong shape");
      for (Eigen::Index a = 0; a < point.rows(); ++a) {
        require_distribution(point.row(a).transpose(), n, "extreme point row");
      }
    }
  }
}

StochasticGame rmdp_to_game(const RmdpInstance& m) {
  m.validate();
  StochasticGame g;
  g.states = m.states;
  g.actions_p1 = m.actions;
  const auto rows = m.actions.size();
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    const auto& points = m.extreme_points[s];
    std::vector<std::string> labels;
    Matrix reward(ix(rows), ix(points.size()));
    std::vector<Vector> transition(rows * points.size());
    for (std::size_t b = 0; b < points.size(); ++b) {
      labels.push_back("ext" + std::to_string(b));
      for (std::size_t a = 0; a < rows; ++a) {
        reward(ix(a), ix(b)) = points[b].row(ix(a)).dot(m.reward[s].row(ix(a)));
        transition[a * points.size() + b] = points[b].row(ix(a)).transpose();
      }
    }
    g.actions_p2.push_back(std::move(labels));
    g.reward.push_back(std::move(reward));
    g.transition.push_back(std::move(transition));
  }
  return g;
}

RmdpInstance game_to_rmdp(const StochasticGame& g) {
  g.validate();
  const auto n = g.num_states();
  const auto rows = g.actions_p1.size();

  // First try successor rewards that reproduce r(s,a,.) in expectation.
  std::vector<Matrix> fitted(n, Matrix::Zero(ix(rows), ix(n)));
  bool expressible = true;
  for (std::size_t s = 0; s < n && expressible; ++s) {
    const auto cols = g.num_actions_p2(s);
    for (std::size_t a = 0; a < rows && expressible; ++a) {
      Matrix laws(ix(cols), ix(n));
      Vector target(ix(cols));
      for (std::size_t b = 0; b < cols; ++b) {
        laws.row(ix(b)) = g.next(s, a, b).transpose();
        target[ix(b)] = g.reward[s](ix(a), ix(b));
      }
      const Vector fit = laws.completeOrthogonalDecomposition().solve(target);
      const double scale = 1.0 + target.cwiseAbs().maxCoeff();
      if ((laws * fit - target).cwiseAbs().maxCoeff() > kRewardFitTolerance * scale) {
        expressible = false;
      } else {
        fitted[s].row(ix(a)) = fit.transpose();
      }
    }
  }

  RmdpInstance m;
  m.actions = g.actions_p1;
  if (expressible) {
    m.states = g.states;
    m.reward = std::move(fitted);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<Matrix> points;
      for (std::size_t b = 0; b < g.num_actions_p2(s); ++b) {
        Matrix point(ix(rows), ix(n));
        for (std::size_t a = 0; a < rows; ++a) point.row(ix(a)) = g.next(s, a, b).transpose();
        points.push_back(std::move(point));
      }
      m.extreme_points.push_back(std::move(points));
    }
    return m;
  }

  // classes[s][a] = distinct values of r(s,a,.), in increasing order.
  std::vector<std::vector<std::vector<double>>> classes(n, std::vector<std::vector<double>>(rows));
  std::size_t copies = 1;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < rows; ++a) {
      auto& values = classes[s][a];
      for (std::size_t b = 0; b < g.num_actions_p2(s); ++b) values.push_back(g.reward[s](ix(a), ix(b)));
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      copies = std::max(copies, values.size());
    }
  }
  if (copies > kAugmentationCap) {
    throw std::runtime_error("reward augmentation would need " + std::to_string(copies) +
                             " copies per state, above the cap of " + std::to_string(kAugmentationCap));
  }

  // Copy c of state s has index c * n + s, so originals keep their indices.
  const auto total = n * copies;
  for (std::size_t c = 0; c < copies; ++c) {
    for (std::size_t s = 0; s < n; ++s) {
      m.states.push_back(c == 0 ? g.states[s] : g.states[s] + "#" + std::to_string(c));
    }
  }
  for (std::size_t c = 0; c < copies; ++c) {
    for (std::size_t s = 0; s < n; ++s) {
      Matrix reward = Matrix::Zero(ix(rows), ix(total));
      for (std::size_t a = 0; a < rows; ++a) {
        const auto& values = classes[s][a];
        for (std::size_t k = 0; k < values.size(); ++k) {
          reward.block(ix(a), ix(k * n), 1, ix(n)).setConstant(values[k]);
        }
      }
      std::vector<Matrix> points;
      for (std::size_t b = 0; b < g.num_actions_p2(s); ++b) {
        Matrix point = Matrix::Zero(ix(rows), ix(total));
        for (std::size_t a = 0; a < rows; ++a) {
          const auto& values = classes[s][a];
          const auto k = static_cast<std::size_t>(
              std::lower_bound(values.begin(), values.end(), g.reward[s](ix(a), ix(b))) - values.begin());
          point.block(ix(a), ix(k * n), 1, ix(n)) = g.next(s, a, b).transpose();
        }
        points.push_back(std::move(point));
      }
      m.reward.push_back(std::move(reward));
      m.extreme_points.push_back(std::move(points));
    }
  }
  return m;
}

StochasticGame absorbing_to_stochastic(const AbsorbingGame& game) {
  StochasticGame g;
  const auto rows = game.num_actions_p1();
  const auto cols = game.num_actions_p2();
  const auto n = 1 + game.num_absorbing_states();
  g.states.push_back("play");
  for (const auto& s : game.absorbing_states()) g.states.push_back(s.name);
  g.actions_p1 = game.actions_p1();
  g.actions_p2.push_back(game.actions_p2());
  g.reward.push_back(game.reward());
  std::vector<Vector> play(rows * cols);
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t b = 0; b < cols; ++b) {
      Vector p(ix(n));
      p[0] = 1.0 - game.p_star(a, b);
      p.tail(ix(n - 1)) = game.absorption(a, b);
      play[a * cols + b] = p;
    }
  }
  g.transition.push_back(std::move(play));
  for (std::size_t s = 1; s < n; ++s) {
    g.actions_p2.push_back({"stay"});
    g.reward.push_back(Matrix::Constant(ix(rows), 1, game.absorbing_states()[s - 1].payoff));
    g.transition.push_back(std::vector<Vector>(rows, point_mass(n, s)));
  }
  g.validate();
  return g;
}

AbsorbingGame stochastic_to_absorbing(const StochasticGame& g) {
  g.validate();
  const auto n = g.num_states();
  const auto rows = g.actions_p1.size();
  auto is_absorbing = [&](std::size_t s) {
    const double first = g.reward[s](0, 0);
    for (std::size_t a = 0; a < rows; ++a) {
      for (std::size_t b = 0; b < g.num_actions_p2(s); ++b) {
        if (g.reward[s](ix(a), ix(b)) != first || g.next(s, a, b)[ix(s)] != 1.0) return false;
      }
    }
    return true;
  };
  std::vector<std::size_t> live;
  for (std::size_t s = 0; s < n; ++s) {
    if (!is_absorbing(s)) live.push_back(s);
  }
  require(live.size() == 1, "an absorbing game needs exactly one non-absorbing state");
  const auto play = live.front();

  std::vector<AbsorbingState> absorbing;
  std::vector<std::size_t> index;
  for (std::size_t s = 0; s < n; ++s) {
    if (s == play) continue;
    absorbing.push_back({g.states[s], g.reward[s](0, 0)});
    index.push_back(s);
  }
  const auto cols = g.num_actions_p2(play);
  std::vector<Vector> absorption;
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t b = 0; b < cols; ++b) {
      Vector p(ix(index.size()));
      for (std::size_t k = 0; k < index.size(); ++k) p[ix(k)] = g.next(play, a, b)[ix(index[k])];
      absorption.push_back(std::move(p));
    }
  }
  return AbsorbingGame(g.actions_p1, g.actions_p2[play], g.reward[play], std::move(absorbing),
                       std::move(absorption));
}

Vector shapley_value(const StochasticGame& g, double lambda, double tol) {
  require(lambda > 0.0 && lambda < 1.0, "discount rate must lie in (0,1)");
  g.validate();
  const auto n = g.num_states();
  const auto rows = g.actions_p1.size();
  Vector v = Vector::Zero(ix(n));
  for (std::size_t it = 0; it < kMaxValueIterations; ++it) {
    Vector next(ix(n));
    for (std::size_t s = 0; s < n; ++s) {
      const auto cols = g.num_actions_p2(s);
      Matrix stage(ix(rows), ix(cols));
      for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t b = 0; b < cols; ++b) {
          stage(ix(a), ix(b)) = lambda * g.reward[s](ix(a), ix(b)) + (1.0 - lambda) * g.next(s, a, b).dot(v);
        }
      }
      next[ix(s)] = solve_matrix_game(stage).value;
    }
    const double step = (next - v).cwiseAbs().maxCoeff();
    v = next;
    if (step <= tol * lambda) return v;
  }
  throw std::runtime_error("Shapley iteration did not converge");
}

double matrix_game_value_by_enumeration(const Matrix& payoff) {
  require(payoff.size() > 0 && payoff.allFinite(), "payoff matrix must be nonempty and finite");
  const auto rows = static_cast<std::size_t>(payoff.rows());
  const auto cols = static_cast<std::size_t>(payoff.cols());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    const auto row_sets = subsets(rows, k);
    const auto col_sets = subsets(cols, k);
    for (const auto& rs : row_sets) {
      for (const auto& cs : col_sets) {
        // Unknowns x_I and v: sum_i x_i M(i,j) = v for j in J, sum_i x_i = 1.
        Matrix system = Matrix::Zero(ix(k + 1), ix(k + 1));
        Vector rhs = Vector::Zero(ix(k + 1));
        for (std::size_t j = 0; j < k; ++j) {
          for (std::size_t i = 0; i < k; ++i) system(ix(j), ix(i)) = payoff(ix(rs[i]), ix(cs[j]));
          system(ix(j), ix(k)) = -1.0;
        }
        for (std::size_t i = 0; i < k; ++i) system(ix(k), ix(i)) = 1.0;
        rhs[ix(k)] = 1.0;
        const auto lu = system.fullPivLu();
        if (!lu.isInvertible()) continue;
        const Vector sol = lu.solve(rhs);
        Vector x = Vector::Zero(ix(rows));
        bool feasible = true;
        for (std::size_t i = 0; i < k; ++i) {
          if (sol[ix(i)] < -1e-12) feasible = false;
          x[ix(rs[i])] = std::max(0.0, sol[ix(i)]);
        }
        if (!feasible) continue;
        x /= x.sum();
        best = std::max(best, (x.transpose() * payoff).minCoeff());
      }
    }
  }
  return best;
}

Vector robust_value(const RmdpInstance& m, double lambda, double tol) {
  require(lambda > 0.0 && lambda < 1.0, "discount rate must lie in (0,1)");
  m.validate();
  const auto n = m.num_states();
  const auto rows = m.actions.size();
  Vector v = Vector::Zero(ix(n));
  for (std::size_t it = 0; it < kMaxValueIterations; ++it) {
    Vector next(ix(n));
    for (std::size_t s = 0; s < n; ++s) {
      const auto& points = m.extreme_points[s];
      Matrix stage(ix(rows), ix(points.size()));
      for (std::size_t a = 0; a < rows; ++a) {
        const Vector continuation =
            lambda * m.reward[s].row(ix(a)).transpose() + (1.0 - lambda) * v;
        for (std::size_t b = 0; b < points.size(); ++b) {
          stage(ix(a), ix(b)) = points[b].row(ix(a)).dot(continuation);
        }
      }
      next[ix(s)] = matrix_game_value_by_enumeration(stage);
    }
    const double step = (next - v).cwiseAbs().maxCoeff();
    v = next;
    if (step <= tol * lambda) return v;
  }
  throw std::runtime_error("robust value iteration did not converge");
}

Vector policy_payoff(const StochasticGame& g, const std::vector<Vector>& x,
                     const std::vector<std::size_t>& choice, double lambda) {
  require(lambda > 0.0 && lambda < 1.0, "discount rate must lie in (0,1)");
  const auto n = g.num_states();
  require(x.size() == n && choice.size() == n, "policy needs one entry per state");
  Matrix q = Matrix::Zero(ix(n), ix(n));
  Vector r = Vector::Zero(ix(n));
  for (std::size_t s = 0; s < n; ++s) {
    require_distribution(x[s], g.actions_p1.size(), "policy");
    require(choice[s] < g.num_actions_p2(s), "choice out of range");
    for (std::size_t a = 0; a < g.actions_p1.size(); ++a) {
      r[ix(s)] += x[s][ix(a)] * g.reward[s](ix(a), ix(choice[s]));
      q.row(ix(s)) += x[s][ix(a)] * g.next(s, a, choice[s]).transpose();
    }
  }
  return (Matrix::Identity(ix(n), ix(n)) - (1.0 - lambda) * q).partialPivLu().solve(lambda * r);
}

Vector policy_payoff(const RmdpInstance& m, const std::vector<Vector>& x,
                     const std::vector<std::size_t>& choice, double lambda) {
  require(lambda > 0.0 && lambda < 1.0, "discount rate must lie in (0,1)");
  const auto n = m.num_states();
  require(x.size() == n && choice.size() == n, "policy needs one entry per state");
  Matrix q = Matrix::Zero(ix(n), ix(n));
  Vector r = Vector::Zero(ix(n));
  for (std::size_t s = 0; s < n; ++s) {
    require_distribution(x[s], m.actions.size(), "policy");
    require(choice[s] < m.extreme_points[s].size(), "choice out of range");
    const Matrix& point = m.extreme_points[s][choice[s]];
    for (std::size_t a = 0; a < m.actions.size(); ++a) {
      r[ix(s)] += x[s][ix(a)] * point.row(ix(a)).dot(m.reward[s].row(ix(a)));
      q.row(ix(s)) += x[s][ix(a)] * point.row(ix(a));
    }
  }
  return (Matrix::Identity(ix(n), ix(n)) - (1.0 - lambda) * q).partialPivLu().solve(lambda * r);
}

nlohmann::json stochastic_game_to_json(const StochasticGame& g) {
  nlohmann::json doc;
  doc["format"] = "stochastic-game";
  doc["actions_p1"] = g.actions_p1;
  auto states = nlohmann::json::array();
  for (std::size_t s = 0; s < g.num_states(); ++s) {
    nlohmann::json state;
    state["name"] = g.states[s];
    state["actions_p2"] = g.actions_p2[s];
    auto reward = nlohmann::json::array();
    auto transition = nlohmann::json::array();
    for (std::size_t a = 0; a < g.actions_p1.size(); ++a) {
      auto reward_row = nlohmann::json::array();
      auto transition_row = nlohmann::json::array();
      for (std::size_t b = 0; b < g.num_actions_p2(s); ++b) {
        reward_row.push_back(g.reward[s](ix(a), ix(b)));
        transition_row.push_back(distribution_to_json(g.next(s, a, b), g.states));
      }
      reward.push_back(reward_row);
      transition.push_back(transition_row);
    }
    state["reward"] = reward;
    state["transition"] = transition;
    states.push_back(state);
  }
  doc["states"] = states;
  return doc;
}

StochasticGame stochastic_game_from_json(const nlohmann::json& doc) {
  try {
    StochasticGame g;
    g.actions_p1 = doc.at("actions_p1").get<std::vector<std::string>>();
    for (const auto& state : doc.at("states")) g.states.push_back(state.at("name").get<std::string>());
    const auto rows = g.actions_p1.size();
    for (const auto& state : doc.at("states")) {
      auto labels = state.at("actions_p2").get<std::vector<std::string>>();
      const auto& reward_doc = state.at("reward");
      const auto& transition_doc = state.at("transition");
      require(reward_doc.size() == rows && transition_doc.size() == rows,
              "rewards and transitions need one row per player 1 action");
      Matrix reward(ix(rows), ix(labels.size()));
      std::vector<Vector> transition;
      for (std::size_t a = 0; a < rows; ++a) {
        require(reward_doc[a].size() == labels.size() && transition_doc[a].size() == labels.size(),
                "rewards and transitions need one entry per player 2 action");
        for (std::size_t b = 0; b < labels.size(); ++b) {
          reward(ix(a), ix(b)) = reward_doc[a][b].get<double>();
          transition.push_back(distribution_from_json(transition_doc[a][b], g.states));
        }
      }
      g.actions_p2.push_back(std::move(labels));
      g.reward.push_back(std::move(reward));
      g.transition.push_back(std::move(transition));
    }
    g.validate();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed stochastic game document: ") + e.what());
  }
}

nlohmann::json rmdp_to_json(const RmdpInstance& m) {
  nlohmann::json doc;
  doc["format"] = "rmdp";
  doc["states"] = m.states;
  doc["actions"] = m.actions;
  auto reward = nlohmann::json::array();
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    for (std::size_t a = 0; a < m.actions.size(); ++a) {
      for (std::size_t t = 0; t < m.num_states(); ++t) {
        const double value = m.reward[s](ix(a), ix(t));
        if (value != 0.0) {
          reward.push_back({{"state", m.states[s]}, {"action", m.actions[a]}, {"next", m.states[t]}, {"value", value}});
        }
      }
    }
  }
  doc["reward"] = reward;
  auto uncertainty = nlohmann::json::array();
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    auto points = nlohmann::json::array();
    for (const auto& point : m.extreme_points[s]) {
      auto entry = nlohmann::json::object();
      for (std::size_t a = 0; a < m.actions.size(); ++a) {
        entry[m.actions[a]] = distribution_to_json(point.row(ix(a)).transpose(), m.states);
      }
      points.push_back(entry);
    }
    uncertainty.push_back({{"state", m.states[s]}, {"extreme_points", points}});
  }
  doc["uncertainty"] = uncertainty;
  return doc;
}

RmdpInstance rmdp_from_json(const nlohmann::json& doc) {
  try {
    RmdpInstance m;
    m.states = doc.at("states").get<std::vector<std::string>>();
    m.actions = doc.at("actions").get<std::vector<std::string>>();
    const auto n = m.states.size();
    const auto rows = m.actions.size();
    m.reward.assign(n, Matrix::Zero(ix(rows), ix(n)));
    m.extreme_points.assign(n, {});
    if (doc.contains("reward")) {
      for (const auto& entry : doc.at("reward")) {
        const auto s = find_label(m.states, entry.at("state").get<std::string>(), "state");
        const auto a = find_label(m.actions, entry.at("action").get<std::string>(), "action");
        const auto t = find_label(m.states, entry.at("next").get<std::string>(), "state");
        m.reward[s](ix(a), ix(t)) = entry.at("value").get<double>();
      }
    }
    for (const auto& block : doc.at("uncertainty")) {
      const auto s = find_label(m.states, block.at("state").get<std::string>(), "state");
      require(m.extreme_points[s].empty(), "state '" + m.states[s] + "' listed twice in uncertainty");
      for (const auto& entry : block.at("extreme_points")) {
        Matrix point = Matrix::Zero(ix(rows), ix(n));
        require(entry.size() == rows, "each extreme point needs a law for every action");
        for (const auto& [action, law] : entry.items()) {
          point.row(ix(find_label(m.actions, action, "action"))) = distribution_from_json(law, m.states).transpose();
        }
        m.extreme_points[s].push_back(std::move(point));
      }
    }
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed robust MDP document: ") + e.what());
  }
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_json_file(const nlohmann::json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace blackwell
