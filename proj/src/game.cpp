#include "blackwell/game.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace blackwell {

namespace {

constexpr double kRowSumSlack = 1e-12;

void require_unique_labels(const std::vector<std::string>& labels, std::string_view what) {
  if (labels.empty()) throw std::invalid_argument(std::string(what) + " must be nonempty");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    throw std::invalid_argument(std::string(what) + " contains duplicate labels");
  }
}

std::size_t find_label(const std::vector<std::string>& labels, std::string_view label,
                       std::string_view what) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw std::invalid_argument("unknown " + std::string(what) + " '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

AbsorbingGame::AbsorbingGame(std::vector<std::string> actions_p1,
                             std::vector<std::string> actions_p2, Matrix reward,
                             std::vector<AbsorbingState> absorbing_states,
                             std::vector<Vector> absorption)
    : actions_p1_(std::move(actions_p1)),
      actions_p2_(std::move(actions_p2)),
      reward_(std::move(reward)),
      absorbing_states_(std::move(absorbing_states)),
      absorption_(std::move(absorption)) {
  require_unique_labels(actions_p1_, "actions_p1");
  require_unique_labels(actions_p2_, "actions_p2");
  const auto rows = num_actions_p1();
  const auto cols = num_actions_p2();
  if (static_cast<std::size_t>(reward_.rows()) != rows ||
      static_cast<std::size_t>(reward_.cols()) != cols) {
    throw std::invalid_argument("reward matrix must be |A| x |B|");
  }
  if (!reward_.allFinite()) throw std::invalid_argument("reward entries must be finite");

  std::set<std::string> names;
  for (const auto& s : absorbing_states_) {
    if (!names.insert(s.name).second) {
      throw std::invalid_argument("duplicate absorbing state '" + s.name + "'");
    }
    if (!std::isfinite(s.payoff)) throw std::invalid_argument("absorbing payoffs must be finite");
  }
  if (absorption_.size() != rows * cols) {
    throw std::invalid_argument("absorption must have |A| x |B| entries");
  }

  const auto n_abs = static_cast<Eigen::Index>(absorbing_states_.size());
  Vector payoffs(n_abs);
  for (Eigen::Index s = 0; s < n_abs; ++s) payoffs[s] = absorbing_states_[static_cast<std::size_t>(s)].payoff;

  p_star_ = Matrix::Zero(idx(rows), idx(cols));
  g_star_ = Matrix::Zero(idx(rows), idx(cols));
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t b = 0; b < cols; ++b) {
      const Vector& p = absorption_[a * cols + b];
      if (p.size() != n_abs) {
        throw std::invalid_argument("absorption vectors must have one entry per absorbing state");
      }
      for (Eigen::Index s = 0; s < n_abs; ++s) {
        if (!(p[s] >= 0.0 && p[s] <= 1.0)) {
          throw std::invalid_argument("absorption probabilities must lie in [0,1]");
        }
      }
      const double total = p.sum();
      if (total > 1.0 + kRowSumSlack) {
        throw std::invalid_argument("absorption probabilities of (" + actions_p1_[a] + "," +
                                    actions_p2_[b] + ") sum to more than 1");
      }
      p_star_(idx(a), idx(b)) = total;
      g_star_(idx(a), idx(b)) = n_abs > 0 ? p.dot(payoffs) : 0.0;
    }
  }

  min_payoff_ = reward_.minCoeff();
  max_payoff_ = reward_.maxCoeff();
  for (const auto& s : absorbing_states_) {
    min_payoff_ = std::min(min_payoff_, s.payoff);
    max_payoff_ = std::max(max_payoff_, s.payoff);
  }
}

double AbsorbingGame::max_abs_payoff() const {
  return std::max(std::abs(min_payoff_), std::abs(max_payoff_));
}

std::size_t AbsorbingGame::index_p1(std::string_view label) const {
  return find_label(actions_p1_, label, "player 1 action");
}

std::size_t AbsorbingGame::index_p2(std::string_view label) const {
  return find_label(actions_p2_, label, "player 2 action");
}

bool AbsorbingGame::operator==(const AbsorbingGame& other) const {
  if (actions_p1_ != other.actions_p1_ || actions_p2_ != other.actions_p2_ ||
      absorbing_states_ != other.absorbing_states_ || reward_ != other.reward_) {
    return false;
  }
  for (std::size_t i = 0; i < absorption_.size(); ++i) {
    if (absorption_[i] != other.absorption_[i]) return false;
  }
  return true;
}

ProductStructure classify(const AbsorbingGame& game) {
  const auto rows = game.num_actions_p1();
  const auto cols = game.num_actions_p2();
  std::vector<bool> row_hit(rows, false);
  std::vector<bool> col_hit(cols, false);
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t b = 0; b < cols; ++b) {
      if (game.p_star(a, b) > 0.0) {
        row_hit[a] = true;
        col_hit[b] = true;
      }
    }
  }
  ProductStructure out;
  for (std::size_t a = 0; a < rows; ++a)
    if (row_hit[a]) out.a_star.push_back(a);
  for (std::size_t b = 0; b < cols; ++b)
    if (col_hit[b]) out.b_star.push_back(b);

  out.is_product = true;
  for (std::size_t a = 0; a < rows && out.is_product; ++a) {
    for (std::size_t b = 0; b < cols; ++b) {
      if ((game.p_star(a, b) > 0.0) != (row_hit[a] && col_hit[b])) {
        out.is_product = false;
        break;
      }
    }
  }
  return out;
}

bool is_generalized_big_match(const AbsorbingGame& game) {
  const auto structure = classify(game);
  return structure.is_product && structure.b_star.size() == game.num_actions_p2() &&
         game.num_actions_p1() == 2;
}

Vector indicator(std::size_t size, const std::vector<std::size_t>& subset) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(size));
  for (auto i : subset) v[static_cast<Eigen::Index>(i)] = 1.0;
  return v;
}

namespace {

// Builds a game whose starred entries absorb with probability one into the
// absorbing state carrying the same payoff as the stage reward.
struct TableEntry {
  double reward;
  const char* absorbs_to;  // nullptr when the entry is not absorbing
};

AbsorbingGame from_table(std::vector<std::string> rows, std::vector<std::string> cols,
                         std::vector<AbsorbingState> absorbing,
                         const std::vector<std::vector<TableEntry>>& table) {
  Matrix reward(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  std::vector<Vector> absorption;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const auto& entry = table[a][b];
      reward(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = entry.reward;
      Vector p = Vector::Zero(static_cast<Eigen::Index>(absorbing.size()));
      if (entry.absorbs_to != nullptr) {
        for (std::size_t s = 0; s < absorbing.size(); ++s) {
          if (absorbing[s].name == entry.absorbs_to) p[static_cast<Eigen::Index>(s)] = 1.0;
        }
      }
      absorption.push_back(std::move(p));
    }
  }
  return AbsorbingGame(std::move(rows), std::move(cols), std::move(reward), std::move(absorbing),
                       std::move(absorption));
}

}  // namespace

AbsorbingGame builtin_game(std::string_view name) {
  if (name == "big-match") {
    return from_table({"Top", "Bottom"}, {"Left", "Right"}, {{"1*", 1.0}, {"0*", 0.0}},
                      {{{1.0, "1*"}, {0.0, "0*"}}, {{0.0, nullptr}, {1.0, nullptr}}});
  }
  if (name == "modified-big-match") {
    return from_table({"Top", "Bottom"}, {"Left", "Middle", "Right"}, {{"1*", 1.0}, {"0*", 0.0}},
                      {{{1.0, "1*"}, {0.0, "0*"}, {0.5, nullptr}},
                       {{0.0, nullptr}, {1.0, nullptr}, {0.5, nullptr}}});
  }
  if (name == "blind-trap") {
    return from_table({"Top", "Bottom"}, {"Left", "Middle", "Right"},
                      {{"1*", 1.0}, {"0*", 0.0}, {"1/2*", 0.5}},
                      {{{1.0, "1*"}, {0.0, "0*"}, {0.5, "1/2*"}},
                       {{0.0, nullptr}, {1.0, nullptr}, {0.5, "1/2*"}}});
  }
  throw std::invalid_argument("unknown built-in game '" + std::string(name) + "'");
}

std::vector<std::string> builtin_game_names() {
  return {"big-match", "modified-big-match", "blind-trap"};
}

nlohmann::json game_to_json(const AbsorbingGame& game) {
  nlohmann::json doc;
  doc["actions_p1"] = game.actions_p1();
  doc["actions_p2"] = game.actions_p2();
  auto states = nlohmann::json::array();
  for (const auto& s : game.absorbing_states()) {
    states.push_back({{"name", s.name}, {"payoff", s.payoff}});
  }
  doc["absorbing_states"] = states;
  auto reward = nlohmann::json::array();
  auto absorption = nlohmann::json::array();
  for (std::size_t a = 0; a < game.num_actions_p1(); ++a) {
    auto reward_row = nlohmann::json::array();
    auto absorption_row = nlohmann::json::array();
    for (std::size_t b = 0; b < game.num_actions_p2(); ++b) {
      reward_row.push_back(game.reward(a, b));
      auto entry = nlohmann::json::object();
      const Vector& p = game.absorption(a, b);
      for (std::size_t s = 0; s < game.num_absorbing_states(); ++s) {
        const double prob = p[static_cast<Eigen::Index>(s)];
        if (prob != 0.0) entry[game.absorbing_states()[s].name] = prob;
      }
      absorption_row.push_back(entry);
    }
    reward.push_back(reward_row);
    absorption.push_back(absorption_row);
  }
  doc["reward"] = reward;
  doc["absorption"] = absorption;
  return doc;
}

AbsorbingGame game_from_json(const nlohmann::json& doc) {
  try {
    auto actions_p1 = doc.at("actions_p1").get<std::vector<std::string>>();
    auto actions_p2 = doc.at("actions_p2").get<std::vector<std::string>>();
    std::vector<AbsorbingState> states;
    if (doc.contains("absorbing_states")) {
      for (const auto& s : doc.at("absorbing_states")) {
        states.push_back({s.at("name").get<std::string>(), s.at("payoff").get<double>()});
      }
    }
    const auto& reward_doc = doc.at("reward");
    if (reward_doc.size() != actions_p1.size()) {
      throw std::invalid_argument("reward must have one row per player 1 action");
    }
    Matrix reward(static_cast<Eigen::Index>(actions_p1.size()),
                  static_cast<Eigen::Index>(actions_p2.size()));
    for (std::size_t a = 0; a < actions_p1.size(); ++a) {
      if (reward_doc[a].size() != actions_p2.size()) {
        throw std::invalid_argument("reward rows must have one entry per player 2 action");
      }
      for (std::size_t b = 0; b < actions_p2.size(); ++b) {
        reward(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            reward_doc[a][b].get<double>();
      }
    }
    std::vector<Vector> absorption(actions_p1.size() * actions_p2.size(),
                                   Vector::Zero(static_cast<Eigen::Index>(states.size())));
    if (doc.contains("absorption")) {
      const auto& abs_doc = doc.at("absorption");
      if (abs_doc.size() != actions_p1.size()) {
        throw std::invalid_argument("absorption must have one row per player 1 action");
      }
      for (std::size_t a = 0; a < actions_p1.size(); ++a) {
        if (abs_doc[a].size() != actions_p2.size()) {
          throw std::invalid_argument("absorption rows must have one entry per player 2 action");
        }
        for (std::size_t b = 0; b < actions_p2.size(); ++b) {
          for (const auto& [name, prob] : abs_doc[a][b].items()) {
            auto it = std::find_if(states.begin(), states.end(),
                                   [&](const AbsorbingState& s) { return s.name == name; });
            if (it == states.end()) {
              throw std::invalid_argument("absorption refers to unknown state '" + name + "'");
            }
            absorption[a * actions_p2.size() + b][it - states.begin()] = prob.get<double>();
          }
        }
      }
    }
    return AbsorbingGame(std::move(actions_p1), std::move(actions_p2), std::move(reward),
                         std::move(states), std::move(absorption));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed game document: ") + e.what());
  }
}

AbsorbingGame load_game(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open game file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("cannot parse " + path.string() + ": " + e.what());
  }
  return game_from_json(doc);
}

void save_game(const AbsorbingGame& game, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << game_to_json(game).dump(2) << '\n';
}

}  // namespace blackwell
