#include "blackwell/evaluator.hpp"
#include "blackwell/random_instances.hpp"
#include "blackwell/value.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace blackwell;

namespace {

const std::vector<std::size_t> kTop{0};

Automaton always(double top) { return stationary_automaton(make_vector({top, 1.0 - top})); }

// Stage-by-stage march of the law of the internal state on the event "not
// yet absorbed", truncated once the discount weight is negligible.
double forward_march(const AbsorbingGame& g, const Automaton& sigma, const Vector& y, double lambda) {
  const auto n = sigma.size();
  const auto rows = g.num_actions_p1();
  const auto cols = g.num_actions_p2();
  Vector alive = sigma.mu0();
  double total = 0.0;
  double weight = 1.0;
  while (weight > 1e-17) {
    Vector next = Vector::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
      const double mass = alive[static_cast<Eigen::Index>(k)];
      if (mass == 0.0) continue;
      for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t b = 0; b < cols; ++b) {
          const double p = mass * sigma.action(k)[static_cast<Eigen::Index>(a)] * y[static_cast<Eigen::Index>(b)];
          total += weight * p * (lambda * g.reward(a, b) + (1.0 - lambda) * g.g_star(a, b));
          next += p * (1.0 - g.p_star(a, b)) * sigma.next(k, a, b);
        }
      }
    }
    alive = next;
    weight *= 1.0 - lambda;
  }
  return total;
}

AbsorbingGame affine_image(const AbsorbingGame& g, double scale, double shift) {
  std::vector<AbsorbingState> states = g.absorbing_states();
  for (auto& s : states) s.payoff = scale * s.payoff + shift;
  std::vector<Vector> absorption;
  for (std::size_t a = 0; a < g.num_actions_p1(); ++a) {
    for (std::size_t b = 0; b < g.num_actions_p2(); ++b) absorption.push_back(g.absorption(a, b));
  }
  Matrix reward = (scale * g.reward().array() + shift).matrix();
  return AbsorbingGame(g.actions_p1(), g.actions_p2(), reward, states, absorption);
}

}  // namespace

TEST_CASE("always Bottom in the Big Match earns nothing") {
  const auto g = builtin_game("big-match");
  for (double lambda : {0.9, 0.1, 1e-5}) {
    const auto r = eval_discounted(g, always(0.0), make_vector({1.0, 0.0}), lambda);
    CHECK(r.gamma == 0.0);
    CHECK(r.absorb_prob == 0.0);
    CHECK(r.terminal_mean == 0.0);
  }
}

TEST_CASE("two-state strategy guarantees one half in the modified Big Match") {
  const auto g = builtin_game("modified-big-match");
  const auto third = make_vector({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  CHECK(std::abs(eval_discounted(g, sigma_star(), third, 1e-5).gamma - 0.5) <= 1e-3);
}

TEST_CASE("evaluator agrees with a forward march") {
  InstanceRng rng(51);
  for (int i = 0; i < 150; ++i) {
    const auto rows = 2 + rng.index(2);
    const auto cols = 2 + rng.index(2);
    const auto g = random_absorbing_game(rng, rows, cols, 1 + rng.index(2));
    const auto sigma = rng.coin(0.5) ? random_autonomous(rng, 4, rows) : random_reactive(rng, 4, rows, cols);
    const Vector y = rng.simplex(cols);
    const double lambda = rng.uniform(0.1, 0.6);
    const auto r = eval_discounted(g, sigma, y, lambda);
    CHECK(std::abs(r.gamma - forward_march(g, sigma, y, lambda)) <= 1e-10);
    CHECK(r.gamma >= g.min_payoff() - 1e-12);
    CHECK(r.gamma <= g.max_payoff() + 1e-12);
    CHECK(r.absorb_prob >= 0.0);
    CHECK(r.absorb_prob <= 1.0 + 1e-12);
    CHECK(std::abs(r.gamma - sigma.mu0().dot(r.values)) <= 1e-12);
  }
}

TEST_CASE("one-state automata match the stationary closed form") {
  InstanceRng rng(52);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_absorbing_game(rng, 3, 2, 2);
    const Vector x = rng.simplex(3);
    const Vector y = rng.simplex(2);
    const double lambda = rng.uniform(1e-4, 0.9);
    CHECK(std::abs(eval_discounted(g, stationary_automaton(x), y, lambda).gamma -
                   stationary_payoff(g, x, y, lambda)) <= 1e-12);
  }
}

TEST_CASE("payoffs transform with the rewards") {
  InstanceRng rng(53);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_absorbing_game(rng, 2, 3, 2);
    const auto h = affine_image(g, 2.5, -1.0);
    const auto sigma = random_reactive(rng, 3, 2, 3);
    const Vector y = rng.simplex(3);
    const double lambda = rng.uniform(0.01, 0.5);
    const double base = eval_discounted(g, sigma, y, lambda).gamma;
    CHECK(std::abs(eval_discounted(h, sigma, y, lambda).gamma - (2.5 * base - 1.0)) <= 1e-10);
  }
}

TEST_CASE("limit payoff of blind strategies") {
  const auto g = builtin_game("modified-big-match");
  const auto right = make_vector({0.0, 0.0, 1.0});
  InstanceRng rng(54);
  for (int i = 0; i < 20; ++i) {
    const auto sigma = random_autonomous(rng, 4, 2);
    for (double lambda : {0.5, 0.01, 1e-5}) {
      CHECK(std::abs(eval_discounted(g, sigma, right, lambda).gamma - 0.5) <= 1e-10);
    }
  }
  const double q = 0.4;
  const auto y1 = make_vector({0.0, 1.0 - q, q});
  const auto y2 = make_vector({1.0 - q, 0.0, q});
  const auto grid = default_limit_grid();
  CHECK(std::abs(eval_limit(g, sigma_star(), y1, grid).value - 0.5) <= 1e-4);
  CHECK(std::abs(eval_limit(g, sigma_star(), y2, grid).value - 0.5) <= 1e-4);
  const std::vector<double> coarse{0.1, 0.01};
  CHECK_THROWS_AS(eval_limit(g, sigma_star(), y1, coarse), std::invalid_argument);
}

TEST_CASE("limit formula for blind strategies") {
  const auto geometric = [](double q) { return 1.0 / (2.0 - q); };
  CHECK(blind_limit_payoff(geometric, make_vector({1.0, 0.0, 0.0})) == doctest::Approx(0.5));
  CHECK(blind_limit_payoff([](double) { return 0.3; }, make_vector({1.0, 0.0, 0.0})) == doctest::Approx(0.7));
  CHECK(blind_limit_payoff(geometric, make_vector({0.0, 0.0, 1.0})) == 0.5);
  CHECK(blind_limit_payoff(geometric, make_vector({0.3, 0.3, 0.4})) == doctest::Approx(0.5).epsilon(1e-14));

  // The evaluator at small rates approaches the formula on a grid of y.
  const auto g = builtin_game("modified-big-match");
  for (int i = 0; i <= 6; ++i) {
    for (int j = 0; i + j <= 6; ++j) {
      const Vector y = make_vector({i / 7.0, j / 7.0, (7 - i - j) / 7.0});
      const double limit = blind_limit_payoff(geometric, y);
      CHECK(std::abs(eval_discounted(g, sigma_star(), y, 1e-7).gamma - limit) <= 1e-4);
      CHECK(limit >= 0.5 - 1e-12);
    }
  }
}

TEST_CASE("first phase of the two-phase strategy") {
  const auto g = builtin_game("big-match");
  const auto s = construct_sigma_eps(g, 0.1, 1e-4);
  const auto left = first_phase_survival(g, s, make_vector({1.0, 0.0}));
  CHECK(left.rhs == doctest::Approx(1.0 / (1.0 + s.alpha_bar)));
  CHECK(std::abs(left.lhs - left.rhs) <= 1e-12);
  CHECK(std::abs(left.rhs - 0.5) <= 1e-4);
  const auto half = first_phase_survival(g, s, make_vector({0.5, 0.5}));
  CHECK(std::abs(half.lhs - half.rhs) <= 1e-12);

  InstanceRng rng(55);
  for (int i = 0; i < 30; ++i) {
    const auto p = random_product_game(rng, 3, 3);
    const auto sp = construct_sigma_eps(p, 0.1, 1e-4);
    if (sp.kind != SigmaEps::Kind::two_phase) continue;
    const auto structure = classify(p);
    const Vector y = rng.simplex(3);
    const auto c = first_phase_survival(p, sp, y);
    CHECK(std::abs(c.lhs - c.rhs) <= 1e-10);
    // Columns outside B* never absorb.
    Vector outside = Vector::Zero(3);
    for (std::size_t b = 0; b < 3; ++b) {
      if (std::find(structure.b_star.begin(), structure.b_star.end(), b) == structure.b_star.end()) {
        outside[static_cast<Eigen::Index>(b)] = 1.0;
      }
    }
    if (outside.sum() > 0.0) {
      outside /= outside.sum();
      const auto never = first_phase_survival(p, sp, outside);
      CHECK(never.lhs == doctest::Approx(1.0));
      CHECK(never.rhs == doctest::Approx(1.0));
    }
  }
  CHECK_THROWS_AS(first_phase_survival(builtin_game("big-match"), construct_sigma_eps(
                      AbsorbingGame({"a", "b"}, {"c", "d"}, Matrix::Identity(2, 2), {}, std::vector<Vector>(4, Vector(0))),
                      0.1, 1e-4), make_vector({0.5, 0.5})),
                  std::invalid_argument);
}

TEST_CASE("two-phase payoff approaches the limit payoff as the rate falls") {
  InstanceRng rng(56);
  int tested = 0;
  for (int i = 0; i < 40 && tested < 10; ++i) {
    const auto g = random_product_game(rng, 3, 3);
    const auto s = construct_sigma_eps(g, 0.1, 1e-4);
    if (s.kind != SigmaEps::Kind::two_phase) continue;
    ++tested;
    const Vector y = rng.simplex(3);
    // Limit payoff of (x, alpha) against (y, 0).
    const double target = limit_game_payoff(g, {s.x, s.alpha}, {y, Vector::Zero(3)});
    const auto sigma = s.automaton();
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : {1e-2, 1e-3, 1e-4}) {
      const double gap = std::abs(eval_discounted(g, sigma, y, lambda).gamma - target);
      CHECK(gap <= previous + 1e-12);
      previous = gap;
    }
    CHECK(previous <= 0.05);
  }
  CHECK(tested > 0);
}

TEST_CASE("absorption statistics") {
  const auto g = builtin_game("big-match");
  const auto r = eval_discounted(g, sigma_star(), make_vector({0.5, 0.5}), 0.2);
  CHECK(r.absorb_prob == doctest::Approx(0.5));
  CHECK(r.terminal_mean == doctest::Approx(0.5));
  const auto top = eval_discounted(g, always(1.0), make_vector({1.0, 0.0}), 0.2);
  CHECK(top.absorb_prob == doctest::Approx(1.0));
  CHECK(top.terminal_mean == doctest::Approx(1.0));
}

TEST_CASE("evaluator input checks") {
  const auto g = builtin_game("big-match");
  CHECK_THROWS_AS(eval_discounted(g, sigma_star(), make_vector({0.5, 0.5, 0.0}), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(eval_discounted(g, sigma_star(), make_vector({0.5, 0.4}), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(eval_discounted(g, always(0.5), make_vector({0.5, 0.5}), 1.5), std::invalid_argument);
  CHECK_THROWS_AS(eval_discounted(g, stationary_automaton(make_vector({0.2, 0.3, 0.5})), make_vector({0.5, 0.5}), 0.1),
                  std::invalid_argument);
}
