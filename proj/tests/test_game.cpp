#include "blackwell/game.hpp"
#include "blackwell/random_instances.hpp"

#include <doctest.h>

#include <filesystem>

using namespace blackwell;

namespace {

using Indices = std::vector<std::size_t>;

nlohmann::json big_match_doc() { return game_to_json(builtin_game("big-match")); }

}  // namespace

TEST_CASE("Big Match structure") {
  const auto g = builtin_game("big-match");
  CHECK(g.num_actions_p1() == 2);
  CHECK(g.num_actions_p2() == 2);
  const auto s = classify(g);
  CHECK(s.a_star == Indices{0});
  CHECK(s.b_star == Indices{0, 1});
  CHECK(s.is_product);
  CHECK(is_generalized_big_match(g));
  CHECK(g.p_star(0, 0) == 1.0);
  CHECK(g.p_star(1, 1) == 0.0);
  CHECK(g.g_star(0, 0) == 1.0);
  CHECK(g.g_star(0, 1) == 0.0);
  CHECK(g.reward(1, 1) == 1.0);
}

TEST_CASE("modified Big Match rows") {
  const auto g = builtin_game("modified-big-match");
  CHECK(g.num_actions_p2() == 3);
  CHECK(g.reward(1, 0) == 0.0);
  CHECK(g.reward(1, 1) == 1.0);
  CHECK(g.reward(1, 2) == 0.5);
  CHECK(g.p_star(0, 2) == 0.0);
  CHECK(g.reward(0, 2) == 0.5);
  const auto s = classify(g);
  CHECK(s.is_product);
  CHECK(s.b_star == Indices{0, 1});
  CHECK_FALSE(is_generalized_big_match(g));
}

TEST_CASE("three-column game is not product absorbing") {
  const auto g = builtin_game("blind-trap");
  const auto s = classify(g);
  CHECK_FALSE(s.is_product);
  CHECK(s.a_star == Indices{0, 1});
  CHECK(s.b_star == Indices{0, 1, 2});
  CHECK_FALSE(is_generalized_big_match(g));
  CHECK(g.g_star(1, 2) == 0.5);
  CHECK(g.g_star(0, 0) == 1.0);
  CHECK(g.reward(1, 1) == 1.0);
}

TEST_CASE("game without absorption is vacuously product") {
  const AbsorbingGame g({"a"}, {"b", "c"}, Matrix::Constant(1, 2, 0.3), {}, {Vector(0), Vector(0)});
  const auto s = classify(g);
  CHECK(s.a_star.empty());
  CHECK(s.b_star.empty());
  CHECK(s.is_product);
}

TEST_CASE("classify depends only on the support of p*") {
  InstanceRng rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_absorbing_game(rng, 3, 3, 2);
    std::vector<Vector> scaled;
    const double factor = rng.uniform(0.01, 1.0);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) scaled.push_back(factor * g.absorption(a, b));
    }
    const AbsorbingGame h(g.actions_p1(), g.actions_p2(), g.reward(), g.absorbing_states(), scaled);
    CHECK(classify(h) == classify(g));
    CHECK(classify(g) == classify(g));
  }
}

TEST_CASE("g* is bounded by p* times the largest absorbing payoff") {
  InstanceRng rng(22);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_absorbing_game(rng, 3, 2, 3);
    double largest = 0.0;
    for (const auto& s : g.absorbing_states()) largest = std::max(largest, std::abs(s.payoff));
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 2; ++b) CHECK(std::abs(g.g_star(a, b)) <= g.p_star(a, b) * largest + 1e-15);
    }
  }
}

TEST_CASE("built-in games survive a file round trip bit for bit") {
  const auto dir = std::filesystem::temp_directory_path();
  for (const auto& name : builtin_game_names()) {
    const auto g = builtin_game(name);
    const auto path = dir / ("blackwell_game_" + name + ".json");
    save_game(g, path);
    CHECK(load_game(path) == g);
    std::filesystem::remove(path);
  }
  InstanceRng rng(23);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_absorbing_game(rng, 2, 3, 2);
    CHECK(game_from_json(nlohmann::json::parse(game_to_json(g).dump())) == g);
  }
}

TEST_CASE("parser rejects malformed absorption") {
  auto doc = big_match_doc();
  doc["absorption"][1][1] = {{"1*", 1.5}};
  CHECK_THROWS_AS(game_from_json(doc), std::invalid_argument);

  doc = big_match_doc();
  doc["absorption"][1][1] = {{"1*", 0.6}, {"0*", 0.5}};
  CHECK_THROWS_AS(game_from_json(doc), std::invalid_argument);

  doc = big_match_doc();
  doc["absorption"][1][1] = {{"1*", -0.1}};
  CHECK_THROWS_AS(game_from_json(doc), std::invalid_argument);

  doc = big_match_doc();
  doc["absorption"][1][1] = {{"2*", 0.1}};
  CHECK_THROWS_AS(game_from_json(doc), std::invalid_argument);

  doc = big_match_doc();
  doc["reward"][0] = {1.0};
  CHECK_THROWS_AS(game_from_json(doc), std::invalid_argument);

  doc = big_match_doc();
  doc.erase("actions_p2");
  CHECK_THROWS_AS(game_from_json(doc), std::invalid_argument);

  doc = big_match_doc();
  doc["absorption"][1][1] = {{"1*", 0.5 + 5e-13}, {"0*", 0.5}};
  CHECK_NOTHROW(game_from_json(doc));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(AbsorbingGame({}, {"b"}, Matrix(0, 1), {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(AbsorbingGame({"a", "a"}, {"b"}, Matrix::Zero(2, 1), {}, {Vector(0), Vector(0)}),
                  std::invalid_argument);
  Matrix bad = Matrix::Zero(1, 1);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(AbsorbingGame({"a"}, {"b"}, bad, {}, {Vector(0)}), std::invalid_argument);
  CHECK_THROWS_AS(builtin_game("no-such-game"), std::invalid_argument);
  CHECK_THROWS_AS(load_game("/nonexistent/game.json"), std::invalid_argument);
}

TEST_CASE("label lookup") {
  const auto g = builtin_game("modified-big-match");
  CHECK(g.index_p1("Bottom") == 1);
  CHECK(g.index_p2("Right") == 2);
  CHECK_THROWS(g.index_p2("Centre"));
}
