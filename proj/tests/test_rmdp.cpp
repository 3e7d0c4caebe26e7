#include "blackwell/random_instances.hpp"
#include "blackwell/rmdp.hpp"
#include "blackwell/value.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>

using namespace blackwell;

namespace {

double max_gap(const Vector& a, const Vector& b, std::size_t n) {
  return (a.head(static_cast<Eigen::Index>(n)) - b.head(static_cast<Eigen::Index>(n))).cwiseAbs().maxCoeff();
}

// Two states, rewards paid on entering s2, one extreme point per state.
RmdpInstance two_state_instance() {
  RmdpInstance m;
  m.states = {"s1", "s2"};
  m.actions = {"a"};
  Matrix reward(1, 2);
  reward << 0.0, 1.0;
  m.reward = {reward, reward};
  Matrix point(1, 2);
  point << 0.3, 0.7;
  m.extreme_points = {{point}, {point}};
  return m;
}

// Stochastic policy per state, extended to reward copies of each state.
std::vector<Vector> policy_for(const StochasticGame& g, InstanceRng& rng, std::size_t total) {
  std::vector<Vector> x;
  for (std::size_t s = 0; s < g.num_states(); ++s) x.push_back(rng.simplex(g.actions_p1.size()));
  for (std::size_t s = g.num_states(); s < total; ++s) x.push_back(x[s % g.num_states()]);
  return x;
}

}  // namespace

TEST_CASE("robust MDP to game") {
  const auto g = rmdp_to_game(two_state_instance());
  CHECK(g.num_actions_p2(0) == 1);
  CHECK(g.reward[0](0, 0) == doctest::Approx(0.7));
  CHECK(g.reward[1](0, 0) == doctest::Approx(0.7));
  CHECK(g.actions_p2[0][0] == "ext0");

  auto constant = two_state_instance();
  constant.reward = {Matrix::Constant(1, 2, 0.4), Matrix::Constant(1, 2, 0.4)};
  Matrix other(1, 2);
  other << 0.9, 0.1;
  constant.extreme_points[0].push_back(other);
  const auto h = rmdp_to_game(constant);
  CHECK(h.num_actions_p2(0) == 2);
  for (std::size_t b = 0; b < 2; ++b) CHECK(h.reward[0](0, static_cast<Eigen::Index>(b)) == doctest::Approx(0.4));
}

TEST_CASE("game to robust MDP without augmentation") {
  InstanceRng rng(71);
  auto g = random_stochastic_game(rng, 3, false);
  for (std::size_t s = 0; s < 3; ++s) {
    for (Eigen::Index a = 0; a < 2; ++a) g.reward[s].row(a).setConstant(g.reward[s](a, 0));
  }
  const auto m = game_to_rmdp(g);
  CHECK(m.num_states() == 3);
  const auto back = rmdp_to_game(m);
  for (std::size_t s = 0; s < 3; ++s) CHECK((back.reward[s] - g.reward[s]).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("Big Match needs reward copies and keeps its value") {
  const auto g = absorbing_to_stochastic(builtin_game("big-match"));
  const auto m = game_to_rmdp(g);
  CHECK(m.num_states() > g.num_states());
  CHECK(m.num_states() % g.num_states() == 0);
  for (double lambda : {0.5, 0.1}) {
    const auto game_value = shapley_value(g, lambda);
    const auto robust = robust_value(m, lambda);
    CHECK(std::abs(game_value[0] - 0.5) <= 1e-9);
    CHECK(max_gap(game_value, robust, g.num_states()) <= 1e-7);
  }
}

TEST_CASE("random round trips preserve rewards and transitions") {
  InstanceRng rng(72);
  int augmented = 0;
  for (int i = 0; i < 40; ++i) {
    const auto g = random_stochastic_game(rng, 2 + rng.index(3), true);
    const auto m = game_to_rmdp(g);
    if (m.num_states() > g.num_states()) ++augmented;
    const auto back = rmdp_to_game(m);
    const auto n = g.num_states();
    for (std::size_t s = 0; s < n; ++s) {
      REQUIRE(back.num_actions_p2(s) == g.num_actions_p2(s));
      CHECK((back.reward[s] - g.reward[s]).cwiseAbs().maxCoeff() <= 1e-8);
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < g.num_actions_p2(s); ++b) {
          // Fold reward copies back onto the original states.
          const Vector& law = back.next(s, a, b);
          Vector folded = Vector::Zero(static_cast<Eigen::Index>(n));
          for (Eigen::Index k = 0; k < law.size(); ++k) folded[k % static_cast<Eigen::Index>(n)] += law[k];
          CHECK((folded - g.next(s, a, b)).cwiseAbs().maxCoeff() <= 1e-12);
        }
      }
    }
  }
  CHECK(augmented > 0);
}

TEST_CASE("robust value equals the game value") {
  InstanceRng rng(73);
  for (int i = 0; i < 25; ++i) {
    const auto g = random_stochastic_game(rng, 2 + rng.index(2), rng.coin(0.5));
    const auto m = game_to_rmdp(g);
    const double lambda = rng.uniform(0.1, 0.6);
    CHECK(max_gap(shapley_value(g, lambda), robust_value(m, lambda), g.num_states()) <= 1e-7);
  }
}

TEST_CASE("policies earn the same on both sides") {
  InstanceRng rng(74);
  for (int i = 0; i < 40; ++i) {
    const auto g = random_stochastic_game(rng, 2 + rng.index(3), true);
    const auto m = game_to_rmdp(g);
    const auto total = m.num_states();
    const auto x = policy_for(g, rng, total);
    std::vector<std::size_t> choice;
    for (std::size_t s = 0; s < total; ++s) choice.push_back(rng.index(g.num_actions_p2(s % g.num_states())));
    const std::vector<Vector> game_x(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(g.num_states()));
    const std::vector<std::size_t> game_choice(choice.begin(), choice.begin() + static_cast<std::ptrdiff_t>(g.num_states()));
    const double lambda = rng.uniform(0.05, 0.6);
    // Copies of a state share its choice, so both sides see the same play.
    std::vector<std::size_t> shared(total);
    for (std::size_t s = 0; s < total; ++s) shared[s] = game_choice[s % g.num_states()];
    CHECK(max_gap(policy_payoff(g, game_x, game_choice, lambda), policy_payoff(m, x, shared, lambda),
                  g.num_states()) <= 1e-10);
  }
}

TEST_CASE("enumeration oracle on small matrices") {
  Matrix m(2, 2);
  m << 3, 1, 0, 2;
  CHECK(matrix_game_value_by_enumeration(m) == doctest::Approx(1.5));
  CHECK(matrix_game_value_by_enumeration(Matrix::Constant(1, 1, -0.25)) == doctest::Approx(-0.25));
}

TEST_CASE("absorbing games survive the stochastic form") {
  InstanceRng rng(75);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_absorbing_game(rng, 2 + rng.index(2), 2 + rng.index(2), 1 + rng.index(3));
    const auto back = stochastic_to_absorbing(absorbing_to_stochastic(g));
    CHECK(back == g);
  }
  const auto s = absorbing_to_stochastic(builtin_game("blind-trap"));
  CHECK(s.states[0] == "play");
  CHECK(s.num_states() == 4);
  CHECK(s.actions_p2[1][0] == "stay");

  InstanceRng other(76);
  CHECK_THROWS_AS(stochastic_to_absorbing(random_stochastic_game(other, 3, false)), std::invalid_argument);
}

TEST_CASE("augmentation cap") {
  StochasticGame g;
  g.states = {"s"};
  g.actions_p1 = {"a"};
  std::vector<std::string> labels;
  Matrix reward(1, 11);
  for (int b = 0; b < 11; ++b) {
    labels.push_back("b" + std::to_string(b));
    reward(0, b) = b;
  }
  g.actions_p2 = {labels};
  g.reward = {reward};
  g.transition = {std::vector<Vector>(11, make_vector({1.0}))};
  CHECK_THROWS_AS(game_to_rmdp(g), std::runtime_error);
}

TEST_CASE("JSON round trips") {
  InstanceRng rng(77);
  const auto dir = std::filesystem::temp_directory_path();
  for (int i = 0; i < 10; ++i) {
    const auto g = random_stochastic_game(rng, 3, true);
    const auto path = dir / "blackwell_sg.json";
    write_json_file(stochastic_game_to_json(g), path);
    const auto back = stochastic_game_from_json(read_json_file(path));
    CHECK(stochastic_game_to_json(back) == stochastic_game_to_json(g));
    const auto m = game_to_rmdp(g);
    const auto rpath = dir / "blackwell_rmdp.json";
    write_json_file(rmdp_to_json(m), rpath);
    const auto mback = rmdp_from_json(read_json_file(rpath));
    CHECK(rmdp_to_json(mback) == rmdp_to_json(m));
    CHECK(max_gap(robust_value(mback, 0.3), robust_value(m, 0.3), m.num_states()) <= 1e-12);
    std::filesystem::remove(path);
    std::filesystem::remove(rpath);
  }
  CHECK_THROWS_AS(stochastic_game_from_json(nlohmann::json{{"format", "stochastic-game"}}), std::invalid_argument);
  CHECK_THROWS_AS(rmdp_from_json(nlohmann::json::array()), std::invalid_argument);
  CHECK_THROWS_AS(read_json_file(dir / "blackwell_missing_file.json"), std::invalid_argument);
}
