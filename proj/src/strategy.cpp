#include "blackwell/strategy.hpp"

#include "blackwell/value.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace blackwell {

namespace {

constexpr double kGeneratingFunctionStep = 1e-12;

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

double mass_on(const Vector& dist, const std::vector<std::size_t>& subset) {
  double total = 0.0;
  for (auto a : subset) {
    if (a >= static_cast<std::size_t>(dist.size())) {
      throw std::invalid_argument("action index outside the automaton's action set");
    }
    total += dist[ix(a)];
  }
  return total;
}

// pi(k'|k) of an autonomous automaton as a dense matrix.
Matrix transition_matrix(const Automaton& sigma) {
  const auto k = sigma.size();
  Matrix p(ix(k), ix(k));
  for (std::size_t i = 0; i < k; ++i) p.row(ix(i)) = sigma.next(i).transpose();
  return p;
}

Vector top_mass(const Automaton& sigma, const std::vector<std::size_t>& top_set) {
  Vector top(ix(sigma.size()));
  for (std::size_t k = 0; k < sigma.size(); ++k) top[ix(k)] = mass_on(sigma.action(k), top_set);
  return top;
}

void require_autonomous(const Automaton& sigma) {
  if (!sigma.is_autonomous()) {
    throw std::invalid_argument(
        "automaton must be autonomous: the law of the top-play count would depend on the opponent");
  }
}

// reach[i][j]: j reachable from i through positive-probability transitions
// (every state reaches itself).
std::vector<std::vector<bool>> reachability(const Matrix& p) {
  const auto n = static_cast<std::size_t>(p.rows());
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<std::size_t> stack{start};
    reach[start][start] = true;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (p(ix(i), ix(j)) > 0.0 && !reach[start][j]) {
          reach[start][j] = true;
          stack.push_back(j);
        }
      }
    }
  }
  return reach;
}

Vector read_vector(const nlohmann::json& doc) { return to_vector(doc.get<std::vector<double>>()); }

nlohmann::json write_vector(const Vector& v) { return to_std(v); }

}  // namespace

Automaton Automaton::autonomous(std::vector<std::string> states, Vector mu0,
                                std::vector<Vector> transition, std::vector<Vector> action_map) {
  Automaton out;
  out.states_ = std::move(states);
  out.mu0_ = std::move(mu0);
  out.transition_ = std::move(transition);
  out.action_map_ = std::move(action_map);
  out.autonomous_ = true;
  out.num_actions_ = out.action_map_.empty() ? 0 : static_cast<std::size_t>(out.action_map_[0].size());
  out.num_opponent_actions_ = 0;
  out.validate();
  return out;
}

Automaton Automaton::reactive(std::vector<std::string> states, Vector mu0,
                              std::vector<Vector> transition, std::vector<Vector> action_map,
                              std::size_t num_opponent_actions) {
  Automaton out;
  out.states_ = std::move(states);
  out.mu0_ = std::move(mu0);
  out.transition_ = std::move(transition);
  out.action_map_ = std::move(action_map);
  out.autonomous_ = false;
  out.num_actions_ = out.action_map_.empty() ? 0 : static_cast<std::size_t>(out.action_map_[0].size());
  out.num_opponent_actions_ = num_opponent_actions;
  if (num_opponent_actions == 0) {
    throw std::invalid_argument("reactive automaton needs at least one opponent action");
  }
  out.validate();
  return out;
}

void Automaton::validate() const {
  const auto k = states_.size();
  if (k == 0) throw std::invalid_argument("automaton needs at least one internal state");
  auto sorted = states_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("automaton state labels must be distinct");
  }
  require_distribution(mu0_, k, "mu0");
  if (action_map_.size() != k) throw std::invalid_argument("action map needs one entry per state");
  if (num_actions_ == 0) throw std::invalid_argument("action map must cover at least one action");
  for (const auto& f : action_map_) require_distribution(f, num_actions_, "automaton action");
  const auto rows = autonomous_ ? k : k * num_actions_ * num_opponent_actions_;
  if (transition_.size() != rows) {
    throw std::invalid_argument("automaton transition table has " +
                                std::to_string(transition_.size()) + " rows, expected " +
                                std::to_string(rows));
  }
  for (const auto& row : transition_) require_distribution(row, k, "automaton transition row");
}

const Vector& Automaton::next(std::size_t k, std::size_t a, std::size_t b) const {
  if (autonomous_) return transition_[k];
  return transition_[(k * num_actions_ + a) * num_opponent_actions_ + b];
}

const Vector& Automaton::next(std::size_t k) const {
  if (!autonomous_) throw std::logic_error("action-independent transition of a reactive automaton");
  return transition_[k];
}

void Automaton::require_compatible(std::size_t rows, std::size_t cols) const {
  if (num_actions_ != rows) {
    throw std::invalid_argument("automaton plays " + std::to_string(num_actions_) +
                                " actions but the game has " + std::to_string(rows) + " rows");
  }
  if (!autonomous_ && num_opponent_actions_ != cols) {
    throw std::invalid_argument("automaton reacts to " + std::to_string(num_opponent_actions_) +
                                " opponent actions but the game has " + std::to_string(cols) +
                                " columns");
  }
}

Automaton stationary_automaton(const Vector& x) {
  return Automaton::autonomous({"x"}, point_mass(1, 0), {point_mass(1, 0)}, {x});
}

Automaton to_automaton(const MarkovianStrategy& m) {
  const auto size = m.prefix.size() + 1;
  std::vector<std::string> states;
  std::vector<Vector> transition;
  std::vector<Vector> action_map;
  for (std::size_t t = 0; t < m.prefix.size(); ++t) {
    states.push_back("stage" + std::to_string(t + 1));
    transition.push_back(point_mass(size, t + 1));
    action_map.push_back(m.prefix[t]);
  }
  states.emplace_back("tail");
  transition.push_back(point_mass(size, size - 1));
  action_map.push_back(m.tail);
  return Automaton::autonomous(std::move(states), point_mass(size, 0), std::move(transition),
                               std::move(action_map));
}

std::vector<double> top_probabilities(const MarkovianStrategy& m,
                                      const std::vector<std::size_t>& top_set) {
  std::vector<double> out;
  out.reserve(m.prefix.size() + 1);
  for (const auto& x : m.prefix) out.push_back(mass_on(x, top_set));
  out.push_back(mass_on(m.tail, top_set));
  return out;
}

double tail_top_probability(const MarkovianStrategy& m, const std::vector<std::size_t>& top_set) {
  return mass_on(m.tail, top_set);
}

Automaton sigma_star() {
  const Vector half = uniform_distribution(2);
  return Automaton::autonomous({"T", "B"}, half, {half, point_mass(2, 1)},
                               {point_mass(2, 0), point_mass(2, 1)});
}

Automaton SigmaEps::automaton() const {
  if (kind == Kind::stationary) return stationary_automaton(x);
  const Vector entry = make_vector({1.0 - delta, delta});
  return Automaton::autonomous({"k_alpha", "k_star"}, entry, {entry, point_mass(2, 1)},
                               {x_alpha, x});
}

SigmaEps construct_sigma_eps(const AbsorbingGame& game, double eps, double lambda_probe) {
  const auto structure = classify(game);
  if (!structure.is_product) {
    throw std::invalid_argument("construction requires a product absorbing game");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(lambda_probe > 0.0 && lambda_probe < 1.0)) {
    throw std::invalid_argument("probe discount rate must lie in (0,1)");
  }

  const auto rows = game.num_actions_p1();
  const Vector in_a_star = indicator(rows, structure.a_star);

  // True for the two-phase branch.
  auto two_phase_at = [&](const Vector& x_lambda) {
    if (structure.a_star.empty()) return false;
    const double mass = x_lambda.dot(in_a_star);
    return mass < kStationaryBranchThreshold && mass > 0.0;
  };

  const Vector x_lambda = optimal_strategy_profile(game, lambda_probe).first;

  SigmaEps out;
  out.eta = eps / 2.0;
  out.lambda_probe = lambda_probe;
  out.absorbing_mass = x_lambda.dot(in_a_star);
  const bool two_phase = two_phase_at(x_lambda);
  out.branch_stable =
      two_phase == two_phase_at(optimal_strategy_profile(game, lambda_probe / 10.0).first);

  if (!two_phase) {
    out.kind = SigmaEps::Kind::stationary;
    out.x = x_lambda;
    return out;
  }

  out.kind = SigmaEps::Kind::two_phase;
  out.alpha = in_a_star.cwiseProduct(x_lambda) / lambda_probe;
  out.alpha_bar = out.alpha.sum();
  out.x_alpha = out.alpha / out.alpha_bar;
  out.delta = 1.0 / (1.0 + out.alpha_bar);
  Vector rest = (Vector::Ones(ix(rows)) - in_a_star).cwiseProduct(x_lambda);
  out.x = rest / rest.sum();
  return out;
}

GeneratingFunctionResult generating_function_detail(const Automaton& sigma,
                                                    const std::vector<std::size_t>& top_set,
                                                    double q) {
  require_autonomous(sigma);
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in [0,1)");

  const Matrix p = transition_matrix(sigma);
  const Vector phi = Vector::Ones(ix(sigma.size())) - (1.0 - q) * top_mass(sigma, top_set);

  GeneratingFunctionResult out;
  Vector h = Vector::Ones(ix(sigma.size()));
  while (out.iterations < kGeneratingFunctionMaxIterations) {
    Vector next = phi.cwiseProduct(p * h);
    out.last_step = (next - h).cwiseAbs().maxCoeff();
    h = std::move(next);
    ++out.iterations;
    if (out.last_step < kGeneratingFunctionStep) break;
  }
  out.value = sigma.mu0().dot(h);
  return out;
}

double generating_function(const Automaton& sigma, const std::vector<std::size_t>& top_set,
                           double q) {
  return generating_function_detail(sigma, top_set, q).value;
}

double expected_top_count(const Automaton& sigma, const std::vector<std::size_t>& top_set) {
  require_autonomous(sigma);
  const auto n = sigma.size();
  const Matrix p = transition_matrix(sigma);
  const Vector top = top_mass(sigma, top_set);
  const auto reach = reachability(p);

  std::vector<bool> recurrent(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j] && !reach[j][i]) {
        recurrent[i] = false;
        break;
      }
    }
  }
  // A recurrent state whose class plays top infinitely often.
  std::vector<bool> bad(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!recurrent[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j] && top[ix(j)] > 0.0) bad[i] = true;
    }
  }
  std::vector<bool> infinite(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j] && bad[j]) infinite[i] = true;
    }
    if (infinite[i] && sigma.mu0()[ix(i)] > 0.0) return std::numeric_limits<double>::infinity();
  }

  // Remaining transient states: n = top + P n, with n = 0 on good recurrent
  // classes (they never play top).
  std::vector<std::size_t> transient;
  for (std::size_t i = 0; i < n; ++i) {
    if (!recurrent[i] && !infinite[i]) transient.push_back(i);
  }
  Vector counts = Vector::Zero(ix(n));
  if (!transient.empty()) {
    const auto m = ix(transient.size());
    Matrix system = Matrix::Identity(m, m);
    Vector rhs(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      rhs[r] = top[ix(transient[static_cast<std::size_t>(r)])];
      for (Eigen::Index c = 0; c < m; ++c) {
        system(r, c) -= p(ix(transient[static_cast<std::size_t>(r)]),
                          ix(transient[static_cast<std::size_t>(c)]));
      }
    }
    const Vector solved = system.partialPivLu().solve(rhs);
    for (Eigen::Index r = 0; r < m; ++r) counts[ix(transient[static_cast<std::size_t>(r)])] = solved[r];
  }
  return sigma.mu0().dot(counts);
}

TopPlaySeries top_play_series(const Automaton& sigma, const std::vector<std::size_t>& top_set,
                              std::size_t horizon) {
  require_autonomous(sigma);
  const Matrix p = transition_matrix(sigma);
  const Vector top = top_mass(sigma, top_set);
  TopPlaySeries out;
  Eigen::RowVectorXd state = sigma.mu0().transpose();
  for (std::size_t t = 0; t < horizon; ++t) {
    out.last_term = state.dot(top);
    out.partial_sum += out.last_term;
    state = state * p;
  }
  return out;
}

GeometricLawReport geometric_law_check(const Automaton& sigma, const std::vector<std::size_t>& top_set,
                                  double eps, const std::vector<double>& q_grid) {
  GeometricLawReport out;
  out.q_grid = q_grid;
  for (double q : q_grid) {
    const double value = generating_function(sigma, top_set, q);
    out.generating_values.push_back(value);
    out.deviations.push_back(std::abs(value - 1.0 / (2.0 - q)));
    out.max_deviation = std::max(out.max_deviation, out.deviations.back());
  }
  out.expected_count = expected_top_count(sigma, top_set);
  out.necessary_condition = out.max_deviation <= 2.0 * eps;
  out.exact_geometric =
      out.max_deviation <= kExactGeometricTolerance && std::isfinite(out.expected_count);
  return out;
}

Automaton as_automaton(const Strategy& strategy) {
  struct Visitor {
    Automaton operator()(const Vector& x) const { return stationary_automaton(x); }
    Automaton operator()(const MarkovianStrategy& m) const { return to_automaton(m); }
    Automaton operator()(const Automaton& a) const { return a; }
  };
  return std::visit(Visitor{}, strategy);
}

nlohmann::json strategy_to_json(const Strategy& strategy) {
  nlohmann::json doc;
  if (const auto* x = std::get_if<Vector>(&strategy)) {
    doc["kind"] = "stationary";
    doc["x"] = write_vector(*x);
  } else if (const auto* m = std::get_if<MarkovianStrategy>(&strategy)) {
    doc["kind"] = "markovian";
    auto prefix = nlohmann::json::array();
    for (const auto& stage : m->prefix) prefix.push_back(write_vector(stage));
    doc["prefix"] = prefix;
    doc["tail"] = write_vector(m->tail);
  } else {
    const auto& a = std::get<Automaton>(strategy);
    doc["kind"] = "automaton";
    doc["states"] = a.states();
    doc["mu0"] = write_vector(a.mu0());
    doc["autonomous"] = a.is_autonomous();
    auto f = nlohmann::json::array();
    auto transition = nlohmann::json::array();
    for (std::size_t k = 0; k < a.size(); ++k) {
      f.push_back(write_vector(a.action(k)));
      if (a.is_autonomous()) {
        transition.push_back(write_vector(a.next(k)));
      } else {
        auto per_action = nlohmann::json::array();
        for (std::size_t i = 0; i < a.num_actions(); ++i) {
          auto per_response = nlohmann::json::array();
          for (std::size_t j = 0; j < a.num_opponent_actions(); ++j) {
            per_response.push_back(write_vector(a.next(k, i, j)));
          }
          per_action.push_back(per_response);
        }
        transition.push_back(per_action);
      }
    }
    doc["transition"] = transition;
    doc["f"] = f;
  }
  return doc;
}

Strategy strategy_from_json(const nlohmann::json& doc) {
  try {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "stationary") {
      Vector x = read_vector(doc.at("x"));
      if (!is_distribution(x)) throw std::invalid_argument("stationary strategy is not a distribution");
      return x;
    }
    if (kind == "markovian") {
      MarkovianStrategy m;
      for (const auto& stage : doc.at("prefix")) m.prefix.push_back(read_vector(stage));
      m.tail = read_vector(doc.at("tail"));
      for (const auto& stage : m.prefix) {
        require_distribution(stage, static_cast<std::size_t>(m.tail.size()), "markovian stage");
      }
      require_distribution(m.tail, static_cast<std::size_t>(m.tail.size()), "markovian tail");
      return m;
    }
    if (kind == "automaton") {
      auto states = doc.at("states").get<std::vector<std::string>>();
      Vector mu0 = read_vector(doc.at("mu0"));
      std::vector<Vector> f;
      for (const auto& row : doc.at("f")) f.push_back(read_vector(row));
      const bool autonomous = doc.value("autonomous", false);
      std::vector<Vector> transition;
      if (autonomous) {
        for (const auto& row : doc.at("transition")) transition.push_back(read_vector(row));
        return Automaton::autonomous(std::move(states), std::move(mu0), std::move(transition),
                                     std::move(f));
      }
      std::size_t num_opponent = 0;
      for (const auto& per_state : doc.at("transition")) {
        for (const auto& per_action : per_state) {
          if (num_opponent == 0) num_opponent = per_action.size();
          if (per_action.size() != num_opponent) {
            throw std::invalid_argument("ragged reactive transition table");
          }
          for (const auto& row : per_action) transition.push_back(read_vector(row));
        }
      }
      return Automaton::reactive(std::move(states), std::move(mu0), std::move(transition),
                                 std::move(f), num_opponent);
    }
    throw std::invalid_argument("unknown strategy kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed strategy document: ") + e.what());
  }
}

Strategy load_strategy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open strategy file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("cannot parse " + path.string() + ": " + e.what());
  }
  return strategy_from_json(doc);
}

void save_strategy(const Strategy& strategy, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << strategy_to_json(strategy).dump(2) << '\n';
}

}  // namespace blackwell
