#pragma once

#include "blackwell/common.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace blackwell {

struct AbsorbingState {
  std::string name;
  double payoff = 0.0;

  bool operator==(const AbsorbingState&) const = default;
};

/**
 * An absorbing game: a single non-absorbing state in which player 1 picks a
 * row a, player 2 picks a column b, the stage reward is r(a,b) and play moves
 * to absorbing state s* with probability p(s*|a,b). Once absorbed, every
 * later stage pays r(s*).
 *
 * The absorption kernel is kept in full; the total absorption probability
 * p*(a,b) and the expected absorbing payoff g*(a,b) = sum_s* p(s*|a,b) r(s*)
 * are cached as matrices. Immutable after construction.
 */
class AbsorbingGame {
 public:
  /// `absorption` is row-major over (a,b), each entry a vector over the
  /// absorbing states. Throws std::invalid_argument on malformed input.
  AbsorbingGame(std::vector<std::string> actions_p1, std::vector<std::string> actions_p2,
                Matrix reward, std::vector<AbsorbingState> absorbing_states,
                std::vector<Vector> absorption);

  std::size_t num_actions_p1() const { return actions_p1_.size(); }
  std::size_t num_actions_p2() const { return actions_p2_.size(); }
  std::size_t num_absorbing_states() const { return absorbing_states_.size(); }

  const std::vector<std::string>& actions_p1() const { return actions_p1_; }
  const std::vector<std::string>& actions_p2() const { return actions_p2_; }
  const std::vector<AbsorbingState>& absorbing_states() const { return absorbing_states_; }

  const Matrix& reward() const { return reward_; }
  double reward(std::size_t a, std::size_t b) const { return reward_(idx(a), idx(b)); }
  const Vector& absorption(std::size_t a, std::size_t b) const {
    return absorption_[a * num_actions_p2() + b];
  }

  const Matrix& p_star() const { return p_star_; }
  const Matrix& g_star() const { return g_star_; }
  double p_star(std::size_t a, std::size_t b) const { return p_star_(idx(a), idx(b)); }
  double g_star(std::size_t a, std::size_t b) const { return g_star_(idx(a), idx(b)); }

  // Bilinear extensions; arguments need not be distributions.
  double reward(const Vector& x, const Vector& y) const { return x.dot(reward_ * y); }
  double p_star(const Vector& x, const Vector& y) const { return x.dot(p_star_ * y); }
  double g_star(const Vector& x, const Vector& y) const { return x.dot(g_star_ * y); }

  /// Smallest and largest payoff reachable: stage rewards and absorbing payoffs.
  double min_payoff() const { return min_payoff_; }
  double max_payoff() const { return max_payoff_; }
  double max_abs_payoff() const;

  std::size_t index_p1(std::string_view label) const;
  std::size_t index_p2(std::string_view label) const;

  bool operator==(const AbsorbingGame& other) const;

 private:
  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

  std::vector<std::string> actions_p1_;
  std::vector<std::string> actions_p2_;
  Matrix reward_;
  std::vector<AbsorbingState> absorbing_states_;
  std::vector<Vector> absorption_;
  Matrix p_star_;
  Matrix g_star_;
  double min_payoff_ = 0.0;
  double max_payoff_ = 0.0;
};

/// Support pattern of p*: rows and columns with some positive absorption, and
/// whether the positive entries fill exactly the rectangle a_star x b_star.
struct ProductStructure {
  std::vector<std::size_t> a_star;
  std::vector<std::size_t> b_star;
  bool is_product = false;

  bool operator==(const ProductStructure&) const = default;
};

/// Entries are positive iff strictly greater than zero; no thresholding.
ProductStructure classify(const AbsorbingGame& game);

/// Product absorbing with b_star = B and exactly two rows.
bool is_generalized_big_match(const AbsorbingGame& game);

/// Indicator vector of a subset of actions.
Vector indicator(std::size_t size, const std::vector<std::size_t>& subset);

/// The three reference games: "big-match", "modified-big-match", "blind-trap".
AbsorbingGame builtin_game(std::string_view name);
std::vector<std::string> builtin_game_names();

nlohmann::json game_to_json(const AbsorbingGame& game);
AbsorbingGame game_from_json(const nlohmann::json& doc);
AbsorbingGame load_game(const std::filesystem::path& path);
void save_game(const AbsorbingGame& game, const std::filesystem::path& path);

}  // namespace blackwell
