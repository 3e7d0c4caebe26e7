#include "blackwell/evaluator.hpp"
#include "blackwell/random_instances.hpp"
#include "blackwell/simulator.hpp"
#include "blackwell/strategy.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

using namespace blackwell;

namespace {

const std::vector<std::size_t> kTop{0};

Automaton always(double top) { return stationary_automaton(make_vector({top, 1.0 - top})); }

// E[q^N] by a linear solve: states that only reach Top-free states have
// value 1, states that cannot reach them have value 0 (N is infinite), and
// the rest solve h = phi (P h).
double generating_function_oracle(const Automaton& sigma, double q) {
  const auto n = sigma.size();
  std::vector<double> top(n);
  for (std::size_t k = 0; k < n; ++k) top[k] = sigma.action(k)[0];
  auto reach = [&](std::size_t from) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      const auto k = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (!seen[j] && sigma.next(k)[static_cast<Eigen::Index>(j)] > 0.0) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    return seen;
  };
  std::vector<bool> quiet(n), can_quiet(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const auto seen = reach(k);
    quiet[k] = true;
    for (std::size_t j = 0; j < n; ++j) quiet[k] = quiet[k] && (!seen[j] || top[j] == 0.0);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto seen = reach(k);
    for (std::size_t j = 0; j < n; ++j) can_quiet[k] = can_quiet[k] || (seen[j] && quiet[j]);
  }
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < n; ++k) {
    if (can_quiet[k] && !quiet[k]) rest.push_back(k);
  }
  Vector h = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (quiet[k]) h[static_cast<Eigen::Index>(k)] = 1.0;
  }
  const auto m = static_cast<Eigen::Index>(rest.size());
  if (m > 0) {
    Matrix system = Matrix::Identity(m, m);
    Vector rhs = Vector::Zero(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      const auto k = rest[static_cast<std::size_t>(r)];
      const double phi = 1.0 - (1.0 - q) * top[k];
      for (std::size_t j = 0; j < n; ++j) {
        const double p = sigma.next(k)[static_cast<Eigen::Index>(j)];
        auto it = std::find(rest.begin(), rest.end(), j);
        if (it != rest.end()) {
          system(r, it - rest.begin()) -= phi * p;
        } else {
          rhs[r] += phi * p * h[static_cast<Eigen::Index>(j)];
        }
      }
    }
    const Vector solved = system.fullPivLu().solve(rhs);
    for (Eigen::Index r = 0; r < m; ++r) h[static_cast<Eigen::Index>(rest[static_cast<std::size_t>(r)])] = solved[r];
  }
  return sigma.mu0().dot(h);
}

// Game with one column where Top absorbs into a zero state: absorption
// probability equals P(N > 0).
AbsorbingGame top_absorbs() {
  return AbsorbingGame({"Top", "Bottom"}, {"only"}, Matrix::Zero(2, 1), {{"0*", 0.0}},
                       {make_vector({1.0}), make_vector({0.0})});
}

}  // namespace

TEST_CASE("two-state strategy") {
  const auto s = sigma_star();
  CHECK(s.size() == 2);
  CHECK(s.is_autonomous());
  CHECK(s.mu0() == make_vector({0.5, 0.5}));
  CHECK(s.next(1) == make_vector({0.0, 1.0}));
  CHECK(s.next(0) == make_vector({0.5, 0.5}));
  CHECK(s.action(0) == make_vector({1.0, 0.0}));
  CHECK(s.action(1) == make_vector({0.0, 1.0}));
}

TEST_CASE("Markovian strategies as clocks") {
  MarkovianStrategy stationary{{}, make_vector({0.3, 0.7})};
  CHECK(to_automaton(stationary).size() == 1);
  MarkovianStrategy five{std::vector<Vector>(5, make_vector({0.1, 0.9})), make_vector({0.0, 1.0})};
  CHECK(to_automaton(five).size() == 6);
  CHECK(top_probabilities(five, kTop).size() == 6);
  CHECK(tail_top_probability(five, kTop) == 0.0);

  // Top at stage 1, then Bottom, against Left in the Big Match: absorbed into
  // 1* after stage 1, so the payoff is lambda * 1 + (1 - lambda) * 1 = 1.
  const auto g = builtin_game("big-match");
  MarkovianStrategy first_top{{make_vector({1.0, 0.0})}, make_vector({0.0, 1.0})};
  const double lambda = 0.3;
  const auto left = make_vector({1.0, 0.0});
  CHECK(std::abs(eval_discounted(g, to_automaton(first_top), left, lambda).gamma - 1.0) <= 1e-12);
  // Against (1/2, 1/2) the first stage absorbs too, into 1* or 0*.
  const auto half = make_vector({0.5, 0.5});
  CHECK(std::abs(eval_discounted(g, to_automaton(first_top), half, lambda).gamma - 0.5) <= 1e-12);
}

TEST_CASE("Markovian evaluation matches a stage-by-stage sum") {
  InstanceRng rng(41);
  const auto g = builtin_game("modified-big-match");
  for (int i = 0; i < 30; ++i) {
    const auto m = random_markovian(rng, 12);
    const Vector y = rng.simplex(3);
    const double lambda = rng.uniform(0.05, 0.5);
    // Direct sum over the prefix, then the stationary tail in closed form.
    double total = 0.0;
    double alive = 1.0;
    double weight = 1.0;  // (1-lambda)^{t-1}
    for (const auto& x : m.prefix) {
      total += alive * weight * (lambda * g.reward(x, y) + (1.0 - lambda) * g.g_star(x, y));
      alive *= 1.0 - g.p_star(x, y);
      weight *= 1.0 - lambda;
    }
    total += alive * weight * stationary_payoff(g, m.tail, y, lambda);
    CHECK(std::abs(eval_discounted(g, to_automaton(m), y, lambda).gamma - total) <= 1e-12);
  }
}

TEST_CASE("size-2 strategy from the discounted optimal strategy") {
  const auto big = construct_sigma_eps(builtin_game("big-match"), 0.1, 1e-4);
  CHECK(big.kind == SigmaEps::Kind::two_phase);
  CHECK(big.x_alpha == make_vector({1.0, 0.0}));
  CHECK(big.x == make_vector({0.0, 1.0}));
  CHECK(std::abs(big.alpha_bar - 1.0 / (1.0 + 1e-4)) <= 1e-6);
  CHECK(std::abs(big.delta - 0.5) <= 1e-4);
  CHECK(big.delta * (1.0 + big.alpha_bar) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(big.eta == 0.05);
  CHECK(big.branch_stable);

  const auto a = big.automaton();
  CHECK(a.size() == 2);
  CHECK(a.is_autonomous());
  CHECK(a.mu0()[1] == big.delta);
  int absorbing = 0;
  for (std::size_t k = 0; k < 2; ++k) {
    if (a.next(k)[static_cast<Eigen::Index>(k)] == 1.0) ++absorbing;
  }
  CHECK(absorbing == 1);

  const auto modified = construct_sigma_eps(builtin_game("modified-big-match"), 0.1, 1e-4);
  CHECK(modified.kind == SigmaEps::Kind::two_phase);
  CHECK(std::abs(modified.delta - 0.5) <= 1e-4);
}

TEST_CASE("no absorbing rows gives the stationary branch") {
  const AbsorbingGame g({"a", "b"}, {"c", "d"}, Matrix::Identity(2, 2), {}, std::vector<Vector>(4, Vector(0)));
  const auto s = construct_sigma_eps(g, 0.1, 1e-4);
  CHECK(s.kind == SigmaEps::Kind::stationary);
  CHECK(s.automaton().size() == 1);
  CHECK_THROWS_AS(construct_sigma_eps(builtin_game("blind-trap"), 0.1, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(construct_sigma_eps(builtin_game("big-match"), 0.0, 1e-4), std::invalid_argument);
}

TEST_CASE("generating function of the two-state strategy") {
  const auto s = sigma_star();
  for (int i = 0; i < 50; ++i) {
    const double q = i / 50.0;
    CHECK(std::abs(generating_function(s, kTop, q) - 1.0 / (2.0 - q)) <= 1e-10);
  }
  CHECK(std::abs(generating_function(s, kTop, 0.0) - 0.5) <= 1e-12);
  CHECK(generating_function(always(0.0), kTop, 0.3) == 1.0);
  CHECK(generating_function(always(1.0), kTop, 0.3) <= 1e-12);
  CHECK_THROWS_AS(generating_function(s, kTop, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(generating_function(s, kTop, -0.1), std::invalid_argument);
}

TEST_CASE("generating function against a linear-solve oracle") {
  InstanceRng rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto sigma = random_autonomous(rng, 4, 2);
    double previous = -1.0;
    for (double q : {0.0, 0.25, 0.5, 0.75, 0.95}) {
      const double value = generating_function(sigma, kTop, q);
      CHECK(std::abs(value - generating_function_oracle(sigma, q)) <= 1e-8);
      CHECK(value >= previous - 1e-12);
      previous = value;
    }
  }
}

TEST_CASE("P(N = 0) matches the evaluator's absorption probability") {
  InstanceRng rng(43);
  const auto g = top_absorbs();
  for (int i = 0; i < 100; ++i) {
    const auto sigma = random_autonomous(rng, 4, 2);
    const double none = generating_function(sigma, kTop, 0.0);
    const double absorbed = eval_discounted(g, sigma, make_vector({1.0}), 0.5).absorb_prob;
    CHECK(std::abs(none - (1.0 - absorbed)) <= 1e-10);
  }
}

TEST_CASE("expected number of Top plays") {
  CHECK(std::abs(expected_top_count(sigma_star(), kTop) - 1.0) <= 1e-12);
  CHECK(expected_top_count(always(0.0), kTop) == 0.0);
  CHECK(std::isinf(expected_top_count(always(0.2), kTop)));
  const auto series = top_play_series(sigma_star(), kTop, 1000);
  CHECK(series.partial_sum >= 0.999);
  CHECK(series.last_term < 1e-3);

  InstanceRng rng(44);
  for (int i = 0; i < 50; ++i) {
    const auto sigma = random_autonomous(rng, 3, 2);
    const double mean = expected_top_count(sigma, kTop);
    if (std::isinf(mean)) continue;
    CHECK(std::abs(top_play_series(sigma, kTop, 20000).partial_sum - mean) <= 1e-6 * (1.0 + mean));
  }
}

TEST_CASE("geometric-law check") {
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(i / 20.0);
  const auto star = geometric_law_check(sigma_star(), kTop, 0.1, grid);
  CHECK(star.exact_geometric);
  CHECK(star.necessary_condition);

  const auto bottom = geometric_law_check(always(0.0), kTop, 0.1, grid);
  CHECK_FALSE(bottom.necessary_condition);
  CHECK(bottom.deviations[0] == doctest::Approx(0.5));

  const auto top = geometric_law_check(always(1.0), kTop, 0.2, grid);
  CHECK_FALSE(top.necessary_condition);
  CHECK(top.deviations[0] == doctest::Approx(0.5));
  CHECK_FALSE(top.exact_geometric);
}

TEST_CASE("automaton validation") {
  CHECK_THROWS_AS(Automaton::autonomous({"k"}, make_vector({0.5}), {make_vector({1.0})}, {make_vector({1.0})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Automaton::autonomous({"k"}, make_vector({1.0}), {make_vector({0.9})}, {make_vector({1.0})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Automaton::autonomous({"k", "k"}, make_vector({1.0, 0.0}),
                                        {make_vector({1.0, 0.0}), make_vector({1.0, 0.0})},
                                        {make_vector({1.0}), make_vector({1.0})}),
                  std::invalid_argument);
  const auto r = Automaton::reactive({"k"}, make_vector({1.0}), std::vector<Vector>(4, make_vector({1.0})),
                                     {make_vector({0.5, 0.5})}, 2);
  CHECK_FALSE(r.is_autonomous());
  CHECK_THROWS_AS(r.require_compatible(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(generating_function(r, kTop, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sigma_star().require_compatible(3, 2), std::invalid_argument);
}

TEST_CASE("strategy files round trip") {
  InstanceRng rng(45);
  const auto dir = std::filesystem::temp_directory_path();
  std::vector<Strategy> strategies{Strategy(make_vector({0.25, 0.75})), Strategy(random_markovian(rng, 6)),
                                   Strategy(sigma_star()), Strategy(random_reactive(rng, 3, 2, 3))};
  const auto g = builtin_game("modified-big-match");
  const Vector y = make_vector({0.2, 0.3, 0.5});
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const auto path = dir / ("blackwell_strategy_" + std::to_string(i) + ".json");
    save_strategy(strategies[i], path);
    const auto back = load_strategy(path);
    CHECK(back.index() == strategies[i].index());
    CHECK(strategy_to_json(back) == strategy_to_json(strategies[i]));
    CHECK(eval_discounted(g, as_automaton(back), y, 0.1).gamma ==
          eval_discounted(g, as_automaton(strategies[i]), y, 0.1).gamma);
    std::filesystem::remove(path);
  }
  CHECK_THROWS_AS(strategy_from_json(nlohmann::json{{"kind", "mystery"}}), std::invalid_argument);
  CHECK_THROWS_AS(strategy_from_json(nlohmann::json{{"kind", "stationary"}, {"x", {0.5, 0.6}}}),
                  std::invalid_argument);
}

TEST_CASE("sampled Top counts follow the geometric law") {
  const auto sample = sample_top_counts(sigma_star(), kTop, 100000, 5);
  for (std::size_t k = 0; k <= 5; ++k) {
    const double p = std::pow(0.5, static_cast<double>(k + 1));
    const double observed = k < sample.histogram.size()
                                ? static_cast<double>(sample.histogram[k]) / static_cast<double>(sample.n_plays)
                                : 0.0;
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(sample.n_plays));
    CHECK(std::abs(observed - p) <= 3.0 * se);
  }
}
