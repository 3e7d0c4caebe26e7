#include "blackwell/verify.hpp"

#include "blackwell/adversary.hpp"
#include "blackwell/random_instances.hpp"
#include "blackwell/rmdp.hpp"
#include "blackwell/simulator.hpp"
#include "blackwell/value.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace blackwell {

namespace {

const std::vector<std::size_t> kTopRow{0};

// Distinct streams per check, so checks can run in any order.
std::uint64_t stream(const VerifyConfig& config, std::uint64_t check) {
  return config.seed * 1000003ULL + check;
}

CheckResult make_result(std::string id, std::string name, std::string statement, double computed,
                        double target, double tolerance, Relation relation) {
  CheckResult r;
  r.id = std::move(id);
  r.name = std::move(name);
  r.statement = std::move(statement);
  r.computed = computed;
  r.target = target;
  r.tolerance = tolerance;
  r.relation = relation;
  r.pass = relation == Relation::at_most ? computed <= target + tolerance
                                         : computed >= target - tolerance;
  return r;
}

const std::vector<double>& value_grid() {
  static const std::vector<double> grid{0.5, 0.1, 0.01, 1e-4, 1e-6};
  return grid;
}

CheckResult check_big_match_value(const VerifyConfig& config) {
  const auto game = builtin_game("big-match");
  double worst = 0.0;
  for (double lambda : value_grid()) {
    worst = std::max(worst, std::abs(discounted_value(game, lambda, 1e-12).value - 0.5));
  }
  auto r = make_result("C1", "big-match-value",
                       "the discounted value of the Big Match is 1/2 at every rate",
                       worst, 0.0, 1e-8 * config.tolerance_scale, Relation::at_most);
  r.details.emplace_back("rates", static_cast<double>(value_grid().size()));
  return r;
}

CheckResult check_modified_big_match_value(const VerifyConfig& config) {
  const auto game = builtin_game("modified-big-match");
  double worst_value = 0.0;
  double worst_top = 0.0;
  for (double lambda : value_grid()) {
    const auto solution = discounted_value(game, lambda, 1e-12);
    worst_value = std::max(worst_value, std::abs(solution.value - 0.5));
    worst_top = std::max(worst_top, std::abs(solution.x_opt[0] - lambda / (1.0 + lambda)));
  }
  const double top_tolerance = 1e-6 * config.tolerance_scale;
  auto r = make_result("C2", "modified-big-match-value",
                       "the modified Big Match has value 1/2 and the optimal Top weight is "
                       "lambda/(1+lambda)",
                       worst_value, 0.0, 1e-8 * config.tolerance_scale, Relation::at_most);
  r.details.emplace_back("top_weight_max_deviation", worst_top);
  r.details.emplace_back("top_weight_tolerance", top_tolerance);
  r.pass = r.pass && worst_top <= top_tolerance;
  return r;
}

CheckResult check_sigma_star_generating_function(const VerifyConfig& config) {
  std::vector<double> grid;
  for (int i = 0; i < 50; ++i) grid.push_back(i / 50.0);
  const auto report = geometric_law_check(sigma_star(), kTopRow, 0.0, grid);
  auto r = make_result("C3", "sigma-star-generating-function",
                       "under the two-state strategy E[q^N] = 1/(2-q) on a 50-point grid",
                       report.max_deviation, 0.0, 1e-10 * config.tolerance_scale,
                       Relation::at_most);
  r.details.emplace_back("expected_top_count", report.expected_count);
  return r;
}

CheckResult check_sigma_star_guarantee(const VerifyConfig& config) {
  const auto game = builtin_game("modified-big-match");
  const auto sigma = sigma_star();
  const double lambda = 1e-5;
  double worst = std::numeric_limits<double>::infinity();
  Vector argmin;
  const auto grid = simplex_grid(3, 50);
  for (const auto& y : grid) {
    const double gamma = eval_discounted(game, sigma, y, lambda).gamma;
    if (gamma < worst) {
      worst = gamma;
      argmin = y;
    }
  }
  auto r = make_result("C4", "sigma-star-guarantee",
                       "the two-state strategy guarantees about 1/2 against every stationary "
                       "column strategy at lambda = 1e-5",
                       worst, 0.5, 5e-3 * config.tolerance_scale, Relation::at_least);
  r.details.emplace_back("grid_points", static_cast<double>(grid.size()));
  r.details.emplace_back("argmin_left", argmin[0]);
  r.details.emplace_back("argmin_middle", argmin[1]);
  r.details.emplace_back("argmin_right", argmin[2]);
  return r;
}

CheckResult check_markovian_suboptimality(const VerifyConfig& config) {
  const auto game = builtin_game("modified-big-match");
  const auto constants = choose_constants();
  InstanceRng rng(stream(config, 5));
  const auto lambdas = default_limit_grid();
  double worst_bound = -std::numeric_limits<double>::infinity();
  double worst_excess = -std::numeric_limits<double>::infinity();
  double cases[3] = {0, 0, 0};
  for (int i = 0; i < 100; ++i) {
    const auto m = random_markovian(rng, 50);
    const auto cert = markovian_adversary(m, constants.c, constants.q);
    worst_bound = std::max(worst_bound, cert.bound);
    const double limit = eval_limit(game, to_automaton(m), cert.y, lambdas).value;
    worst_excess = std::max(worst_excess, limit - cert.bound);
    if (cert.case_label == "divergent") ++cases[0];
    if (cert.case_label == "large-sum") ++cases[1];
    if (cert.case_label == "small-sum") ++cases[2];
  }
  const double excess_tolerance = 1e-3 * config.tolerance_scale;
  auto r = make_result("C5", "markovian-suboptimality",
                       "against every eventually stationary Markovian strategy some stationary "
                       "column strategy holds the limit payoff to 1/2 - eps_star",
                       worst_bound, 0.5 - constants.eps_star, 0.0, Relation::at_most);
  r.details.emplace_back("c", constants.c);
  r.details.emplace_back("q", constants.q);
  r.details.emplace_back("eps_star", constants.eps_star);
  r.details.emplace_back("max_limit_minus_bound", worst_excess);
  r.details.emplace_back("limit_tolerance", excess_tolerance);
  r.details.emplace_back("divergent_cases", cases[0]);
  r.details.emplace_back("large_sum_cases", cases[1]);
  r.details.emplace_back("small_sum_cases", cases[2]);
  r.pass = r.pass && constants.eps_star >= 0.002 && worst_excess <= excess_tolerance;
  return r;
}

CheckResult check_lecam(const VerifyConfig& config) {
  InstanceRng rng(stream(config, 6));
  double worst = -std::numeric_limits<double>::infinity();
  double violations = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> params(1 + rng.index(20));
    for (auto& p : params) p = rng.uniform(0.0, 0.5);
    const auto report = lecam_check(params, params.size() + 5);
    const double slack = report.max_deviation - report.bound;
    worst = std::max(worst, slack);
    if (slack > 0.0) ++violations;
  }
  auto r = make_result("C6", "lecam-bound",
                       "a sum of independent Bernoulli variables is within the sum of squared "
                       "parameters of the Poisson law at every point",
                       worst, 0.0, 0.0, Relation::at_most);
  r.details.emplace_back("violations", violations);
  return r;
}

CheckResult check_sigma_eps(const VerifyConfig& config) {
  InstanceRng rng(stream(config, 7));
  std::vector<std::pair<AbsorbingGame, bool>> games;
  games.emplace_back(builtin_game("big-match"), true);
  games.emplace_back(builtin_game("modified-big-match"), true);
  for (int i = 0; i < 20; ++i) games.emplace_back(random_product_game(rng, 3, 3), false);

  double builtin_margin = std::numeric_limits<double>::infinity();
  double random_margin = std::numeric_limits<double>::infinity();
  double two_phase = 0;
  for (const auto& [game, builtin] : games) {
    const auto s = construct_sigma_eps(game, 0.1, 1e-4);
    if (s.kind == SigmaEps::Kind::two_phase) ++two_phase;
    const auto sigma = s.automaton();
    for (double lambda : {1e-4, 1e-5}) {
      const double gamma = best_response_search(game, sigma, lambda, 0.02).gamma;
      const double margin = gamma - (discounted_value(game, lambda).value - 0.1);
      double& slot = builtin ? builtin_margin : random_margin;
      slot = std::min(slot, margin);
    }
  }
  const double tolerance = 1e-3 * config.tolerance_scale;
  auto r = make_result("C7", "sigma-eps-guarantee",
                       "the size-2 strategy built from the discounted optimal strategy "
                       "guarantees v_lambda - 0.1 against the searched best response",
                       std::min(builtin_margin, random_margin), 0.0, tolerance, Relation::at_least);
  r.details.emplace_back("builtin_min_margin", builtin_margin);
  r.details.emplace_back("random_min_margin", random_margin);
  r.details.emplace_back("two_phase_instances", two_phase);
  return r;
}

CheckResult check_blind_trap(const VerifyConfig& config) {
  const auto game = builtin_game("blind-trap");
  InstanceRng rng(stream(config, 8));
  std::vector<Automaton> strategies{sigma_star()};
  for (int i = 0; i < 20; ++i) strategies.push_back(random_autonomous(rng, 3, 2));
  const double eps_inner = 0.05;
  const auto lambdas = default_limit_grid();
  double worst_bound = -std::numeric_limits<double>::infinity();
  double worst_excess = -std::numeric_limits<double>::infinity();
  double balanced = 0;
  for (const auto& sigma : strategies) {
    const auto cert = blind_adversary_trap(sigma, eps_inner);
    if (cert.case_label == "balanced") ++balanced;
    worst_bound = std::max(worst_bound, cert.bound);
    worst_excess = std::max(worst_excess, eval_limit(game, sigma, cert.y, lambdas).value - cert.bound);
  }
  const double excess_tolerance = 1e-3 * config.tolerance_scale;
  auto r = make_result("C8", "blind-trap",
                       "against every blind automaton in the three-column game some stationary "
                       "column strategy holds the limit payoff to 1/3 + eps",
                       worst_bound, 1.0 / 3.0 + eps_inner, 1e-12, Relation::at_most);
  r.details.emplace_back("max_limit_minus_bound", worst_excess);
  r.details.emplace_back("limit_tolerance", excess_tolerance);
  r.details.emplace_back("balanced_cases", balanced);
  r.pass = r.pass && worst_excess <= excess_tolerance;
  return r;
}

SigmaEps random_two_phase(InstanceRng& rng, const AbsorbingGame& game) {
  const auto structure = classify(game);
  const auto rows = game.num_actions_p1();
  SigmaEps s;
  s.kind = SigmaEps::Kind::two_phase;
  s.alpha = Vector::Zero(static_cast<Eigen::Index>(rows));
  for (auto a : structure.a_star) s.alpha[static_cast<Eigen::Index>(a)] = rng.uniform(0.01, 5.0);
  s.alpha_bar = s.alpha.sum();
  s.x_alpha = s.alpha / s.alpha_bar;
  s.delta = 1.0 / (1.0 + s.alpha_bar);
  s.x = rng.simplex(rows);
  return s;
}

CheckResult check_first_phase_identity(const VerifyConfig& config) {
  InstanceRng rng(stream(config, 9));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto game = random_product_game(rng, 2 + rng.index(2), 2 + rng.index(2));
    const auto s = random_two_phase(rng, game);
    const Vector y = rng.simplex(game.num_actions_p2());
    const auto terms = first_phase_survival(game, s, y);
    worst = std::max(worst, std::abs(terms.lhs - terms.rhs));
  }
  return make_result("C9", "first-phase-identity",
                     "the first phase ends unabsorbed with probability 1/(1 + p*(alpha,y))",
                     worst, 0.0, 1e-12 * config.tolerance_scale, Relation::at_most);
}

CheckResult check_oracle_equivalence(const VerifyConfig& config) {
  InstanceRng rng(stream(config, 10));
  std::size_t passed = 0;
  double worst_z = 0.0;
  for (std::size_t i = 0; i < config.oracle_tuples; ++i) {
    const auto game = random_absorbing_game(rng, 2 + rng.index(2), 2 + rng.index(2), 1 + rng.index(2));
    const auto sigma = rng.coin(0.5)
                           ? random_autonomous(rng, 4, game.num_actions_p1())
                           : random_reactive(rng, 4, game.num_actions_p1(), game.num_actions_p2());
    const Vector y = rng.sparse_simplex(game.num_actions_p2());
    const double lambda = rng.coin(0.5) ? 0.3 : 0.05;
    const double exact = eval_discounted(game, sigma, y, lambda).gamma;
    const auto sim = simulate(game, sigma, y, lambda, config.oracle_plays, stream(config, 1000 + i));
    const double gap = std::abs(exact - sim.mean);
    const double band = 3.0 * sim.std_error * config.tolerance_scale + 1e-10 * game.max_abs_payoff() + 1e-12;
    if (gap <= band) ++passed;
    if (sim.std_error > 1e-9) worst_z = std::max(worst_z, gap / sim.std_error);
  }
  const double rate = static_cast<double>(passed) / static_cast<double>(config.oracle_tuples);
  auto r = make_result("C10", "oracle-equivalence",
                       "exact evaluation agrees with Monte Carlo within three standard errors",
                       rate, 0.95, 0.0, Relation::at_least);
  r.details.emplace_back("tuples", static_cast<double>(config.oracle_tuples));
  r.details.emplace_back("plays", static_cast<double>(config.oracle_plays));
  r.details.emplace_back("max_z", worst_z);
  return r;
}

CheckResult check_rmdp_round_trip(const VerifyConfig& config) {
  InstanceRng rng(stream(config, 11));
  const double lambda = 0.1;
  double worst = 0.0;
  double augmented = 0;
  for (int i = 0; i < 50; ++i) {
    const auto game = random_stochastic_game(rng, 2 + rng.index(2), rng.coin(0.5));
    const auto n = static_cast<Eigen::Index>(game.num_states());
    const Vector on_game = shapley_value(game, lambda);
    const auto rmdp = game_to_rmdp(game);
    if (rmdp.num_states() > game.num_states()) ++augmented;
    const Vector robust = robust_value(rmdp, lambda).head(n);
    const Vector round_trip = shapley_value(rmdp_to_game(rmdp), lambda).head(n);
    worst = std::max({worst, (robust - on_game).cwiseAbs().maxCoeff(),
                      (round_trip - on_game).cwiseAbs().maxCoeff()});
  }
  auto r = make_result("C11", "rmdp-round-trip",
                       "converting a stochastic game to a robust MDP and back preserves the "
                       "discounted value",
                       worst, 0.0, 1e-7 * config.tolerance_scale, Relation::at_most);
  r.details.emplace_back("augmented_instances", augmented);
  return r;
}

double rounded(double value) {
  if (!std::isfinite(value)) return value;
  return std::stod(format_real(value));
}

std::string relation_text(Relation relation) {
  return relation == Relation::at_most ? "<=" : ">=";
}

nlohmann::json number(double value) {
  if (std::isfinite(value)) return rounded(value);
  return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
}

}  // namespace

const std::vector<CheckDefinition>& verification_checks() {
  static const std::vector<CheckDefinition> checks{
      {"C1", "big-match-value", 1.0, check_big_match_value},
      {"C2", "modified-big-match-value", 1.0, check_modified_big_match_value},
      {"C3", "sigma-star-generating-function", 1.0, check_sigma_star_generating_function},
      {"C4", "sigma-star-guarantee", 30.0, check_sigma_star_guarantee},
      {"C5", "markovian-suboptimality", 60.0, check_markovian_suboptimality},
      {"C6", "lecam-bound", 10.0, check_lecam},
      {"C7", "sigma-eps-guarantee", 300.0, check_sigma_eps},
      {"C8", "blind-trap", 60.0, check_blind_trap},
      {"C9", "first-phase-identity", 1.0, check_first_phase_identity},
      {"C10", "oracle-equivalence", 300.0, check_oracle_equivalence},
      {"C11", "rmdp-round-trip", 30.0, check_rmdp_round_trip},
  };
  return checks;
}

VerificationReport run_verification(const VerifyConfig& config) {
  VerificationReport report;
  report.overall = true;
  for (const auto& spec : verification_checks()) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult result = spec.run(config);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.runtime_limit = spec.runtime_limit;
    report.overall = report.overall && result.pass;
    report.checks.push_back(std::move(result));
  }
  return report;
}

std::string report_to_text(const VerificationReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.id << ' ' << c.name << ": computed "
        << format_real(c.computed) << ' ' << relation_text(c.relation) << " target "
        << format_real(c.target) << " (tolerance " << format_real(c.tolerance) << ")\n";
    out << "     claim: " << c.statement << '\n';
    for (const auto& [key, value] : c.details) out << "     " << key << " = " << format_real(value) << '\n';
  }
  out << "overall: " << (report.overall ? "PASS" : "FAIL") << '\n';
  return out.str();
}

nlohmann::json report_to_json(const VerificationReport& report) {
  auto checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json entry;
    entry["id"] = c.id;
    entry["name"] = c.name;
    entry["claim"] = c.statement;
    entry["computed"] = number(c.computed);
    entry["relation"] = relation_text(c.relation);
    entry["target"] = number(c.target);
    entry["tolerance"] = number(c.tolerance);
    auto details = nlohmann::json::object();
    for (const auto& [key, value] : c.details) details[key] = number(value);
    entry["details"] = details;
    entry["pass"] = c.pass;
    checks.push_back(entry);
  }
  return {{"checks", checks}, {"overall", report.overall}};
}

}  // namespace blackwell
