#include "blackwell/adversary.hpp"
#include "blackwell/rmdp.hpp"
#include "blackwell/simulator.hpp"
#include "blackwell/value.hpp"
#include "blackwell/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>
#include <string>

using namespace blackwell;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

constexpr std::string_view kBuiltinPrefix = "builtin:";
constexpr std::string_view kStationaryPrefix = "stationary:";

bool starts_with(const std::string& text, std::string_view prefix) {
  return text.compare(0, prefix.size(), prefix) == 0;
}

AbsorbingGame resolve_game(const std::string& spec) {
  if (starts_with(spec, kBuiltinPrefix)) return builtin_game(spec.substr(kBuiltinPrefix.size()));
  return load_game(spec);
}

// "builtin:sigma-star", "stationary:0.5,0.5" or a strategy file.
Strategy resolve_strategy(const std::string& spec) {
  if (spec == "builtin:sigma-star") return sigma_star();
  if (starts_with(spec, kBuiltinPrefix)) {
    throw std::invalid_argument("unknown built-in strategy '" + spec + "'");
  }
  if (starts_with(spec, kStationaryPrefix)) {
    Vector x = parse_vector(spec.substr(kStationaryPrefix.size()));
    if (!is_distribution(x)) throw std::invalid_argument("stationary strategy is not a distribution");
    return x;
  }
  return load_strategy(spec);
}

void print(const std::string& key, double value) {
  std::cout << key << ": " << format_real(value) << '\n';
}

void print(const std::string& key, const Vector& value) {
  std::cout << key << ": " << format_vector(value) << '\n';
}

void print_certificate(const CertifiedBound& cert) {
  std::cout << "certificate: " << cert.case_label << '\n';
  print("  y", cert.y);
  print("  bound", cert.bound);
  for (const auto& [name, value] : cert.terms) print("  " + name, value);
}

struct ValueOptions {
  std::string game;
  double lambda = 0.0;
  double tol = kDefaultValueTolerance;
};

int run_value(const ValueOptions& o) {
  const auto solution = discounted_value(resolve_game(o.game), o.lambda, o.tol);
  print("lambda", solution.lambda);
  print("value", solution.value);
  print("x", solution.x_opt);
  print("y", solution.y_opt);
  print("residual", solution.residual);
  std::cout << "iterations: " << solution.iterations << '\n';
  return kExitOk;
}

struct SweepOptions {
  std::string game;
  std::string lambdas = "0.1,0.01,0.001,0.0001,1e-05,1e-06";
  double tol = kDefaultValueTolerance;
};

int run_value_sweep(const SweepOptions& o) {
  const auto game = resolve_game(o.game);
  const auto grid = to_std(parse_vector(o.lambdas));
  const auto sweep = limit_value_estimate(game, grid, o.tol);
  std::cout << "lambda\tvalue\tx\n";
  for (const auto& s : sweep.sweep) {
    std::cout << format_real(s.lambda) << '\t' << format_real(s.value) << '\t' << format_vector(s.x_opt) << '\n';
  }
  print("estimate", sweep.estimate);
  return kExitOk;
}

struct EvalOptions {
  std::string game;
  std::string strategy;
  std::string y;
  double lambda = 0.0;
};

int run_eval(const EvalOptions& o) {
  const auto game = resolve_game(o.game);
  const auto sigma = as_automaton(resolve_strategy(o.strategy));
  const auto result = eval_discounted(game, sigma, parse_vector(o.y), o.lambda);
  print("gamma", result.gamma);
  print("W", result.values);
  print("absorb_prob", result.absorb_prob);
  print("terminal_mean", result.terminal_mean);
  return kExitOk;
}

struct AdversaryOptions {
  std::string game;
  std::string strategy;
  double lambda = 0.0;
  double grid = 0.02;
  double eps_inner = 0.05;
};

int run_adversary(const AdversaryOptions& o) {
  const auto game = resolve_game(o.game);
  const auto strategy = resolve_strategy(o.strategy);
  const auto sigma = as_automaton(strategy);
  const auto best = best_response_search(game, sigma, o.lambda, o.grid);
  print("y", best.y);
  print("gamma", best.gamma);
  std::cout << "evaluations: " << best.evaluations << '\n';

  if (game == builtin_game("modified-big-match")) {
    const MarkovianStrategy* m = std::get_if<MarkovianStrategy>(&strategy);
    MarkovianStrategy stationary;
    if (const auto* x = std::get_if<Vector>(&strategy)) {
      stationary.tail = *x;
      m = &stationary;
    }
    if (m != nullptr) {
      const auto constants = choose_constants();
      print_certificate(markovian_adversary(*m, constants.c, constants.q));
    }
  } else if (game == builtin_game("blind-trap") && sigma.is_autonomous()) {
    print_certificate(blind_adversary_trap(sigma, o.eps_inner));
  }
  return kExitOk;
}

struct ConstructOptions {
  std::string game;
  double eps = 0.1;
  double lambda_probe = 1e-4;
  std::string out;
};

int run_construct(const ConstructOptions& o) {
  const auto s = construct_sigma_eps(resolve_game(o.game), o.eps, o.lambda_probe);
  std::cout << "kind: " << (s.kind == SigmaEps::Kind::two_phase ? "two-phase" : "stationary") << '\n';
  print("x", s.x);
  if (s.kind == SigmaEps::Kind::two_phase) {
    print("x_alpha", s.x_alpha);
    print("alpha", s.alpha);
    print("alpha_bar", s.alpha_bar);
    print("delta", s.delta);
  }
  print("eta", s.eta);
  print("lambda_probe", s.lambda_probe);
  print("absorbing_mass", s.absorbing_mass);
  std::cout << "branch_stable: " << (s.branch_stable ? "true" : "false") << '\n';
  if (!o.out.empty()) save_strategy(s.automaton(), o.out);
  return kExitOk;
}

struct SimulateOptions {
  std::string game;
  std::string strategy;
  std::string y;
  double lambda = 0.0;
  std::size_t n = 100000;
  std::uint64_t seed = 42;
};

int run_simulate(const SimulateOptions& o) {
  const auto game = resolve_game(o.game);
  const auto sigma = as_automaton(resolve_strategy(o.strategy));
  const auto report = simulate(game, sigma, parse_vector(o.y), o.lambda, o.n, o.seed);
  std::cout << "n_plays: " << report.n_plays << '\n';
  print("mean", report.mean);
  print("std_error", report.std_error);
  print("absorb_freq", report.absorb_freq);
  std::cout << "seed: " << report.seed << '\n';
  return kExitOk;
}

struct ConvertOptions {
  std::string in;
  std::string out;
  std::string direction = "to-rmdp";
};

int run_rmdp_convert(const ConvertOptions& o) {
  if (o.direction == "to-game") {
    const auto game = rmdp_to_game(rmdp_from_json(read_json_file(o.in)));
    write_json_file(stochastic_game_to_json(game), o.out);
    std::cout << "states: " << game.num_states() << '\n';
    return kExitOk;
  }
  StochasticGame game;
  if (starts_with(o.in, kBuiltinPrefix)) {
    game = absorbing_to_stochastic(resolve_game(o.in));
  } else {
    const auto doc = read_json_file(o.in);
    game = doc.value("format", "") == "stochastic-game" ? stochastic_game_from_json(doc)
                                                        : absorbing_to_stochastic(game_from_json(doc));
  }
  const auto rmdp = game_to_rmdp(game);
  write_json_file(rmdp_to_json(rmdp), o.out);
  std::cout << "states: " << rmdp.num_states() << '\n';
  std::cout << "augmented: " << (rmdp.num_states() > game.num_states() ? "true" : "false") << '\n';
  return kExitOk;
}

struct VerifyOptions {
  VerifyConfig config;
  bool json = false;
};

int run_verify(const VerifyOptions& o) {
  const auto report = run_verification(o.config);
  if (o.json) {
    std::cout << report_to_json(report).dump(2) << '\n';
  } else {
    std::cout << report_to_text(report);
  }
  return report.overall ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discounted and limit payoffs in absorbing games"};
  app.require_subcommand(1);

  ValueOptions value;
  auto* value_cmd = app.add_subcommand("value", "discounted value and optimal strategies");
  value_cmd->add_option("--game", value.game, "game file or builtin:<name>")->required();
  value_cmd->add_option("--lambda", value.lambda, "discount rate in (0,1)")->required();
  value_cmd->add_option("--tol", value.tol, "value tolerance");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("value-sweep", "discounted values over a decreasing grid");
  sweep_cmd->add_option("--game", sweep.game, "game file or builtin:<name>")->required();
  sweep_cmd->add_option("--lambdas", sweep.lambdas, "comma-separated decreasing rates");
  sweep_cmd->add_option("--tol", sweep.tol, "value tolerance");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "exact payoff of a strategy against stationary y");
  eval_cmd->add_option("--game", eval.game, "game file or builtin:<name>")->required();
  eval_cmd->add_option("--strategy", eval.strategy, "strategy file, builtin:sigma-star or stationary:<x>")->required();
  eval_cmd->add_option("--y", eval.y, "column strategy, e.g. 0.3,0.3,0.4")->required();
  eval_cmd->add_option("--lambda", eval.lambda, "discount rate in (0,1)")->required();

  AdversaryOptions adversary;
  auto* adversary_cmd = app.add_subcommand("adversary", "best stationary response and certified bounds");
  adversary_cmd->add_option("--game", adversary.game, "game file or builtin:<name>")->required();
  adversary_cmd->add_option("--strategy", adversary.strategy, "strategy file, builtin:sigma-star or stationary:<x>")->required();
  adversary_cmd->add_option("--lambda", adversary.lambda, "discount rate in (0,1)")->required();
  adversary_cmd->add_option("--grid", adversary.grid, "simplex grid step");
  adversary_cmd->add_option("--eps-inner", adversary.eps_inner, "slack for the blind adversary");

  ConstructOptions construct;
  auto* construct_cmd = app.add_subcommand("construct", "size-2 strategy from the discounted optimal strategy");
  construct_cmd->add_option("--game", construct.game, "game file or builtin:<name>")->required();
  construct_cmd->add_option("--eps", construct.eps, "target slack");
  construct_cmd->add_option("--lambda-probe", construct.lambda_probe, "probe discount rate");
  construct_cmd->add_option("--out", construct.out, "write the automaton to this strategy file");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of the discounted payoff");
  sim_cmd->add_option("--game", sim.game, "game file or builtin:<name>")->required();
  sim_cmd->add_option("--strategy", sim.strategy, "strategy file, builtin:sigma-star or stationary:<x>")->required();
  sim_cmd->add_option("--y", sim.y, "column strategy")->required();
  sim_cmd->add_option("--lambda", sim.lambda, "discount rate in (0,1)")->required();
  sim_cmd->add_option("--n", sim.n, "number of plays")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "random seed");

  ConvertOptions convert;
  auto* convert_cmd = app.add_subcommand("rmdp-convert", "convert between games and robust MDPs");
  convert_cmd->add_option("--in", convert.in, "input file (or builtin:<name> for to-rmdp)")->required();
  convert_cmd->add_option("--out", convert.out, "output file")->required();
  convert_cmd->add_option("--direction", convert.direction, "to-game or to-rmdp")
      ->check(CLI::IsMember({"to-game", "to-rmdp"}));

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "run every acceptance check");
  verify_cmd->add_flag("--json", verify.json, "emit the report as JSON");
  verify_cmd->add_option("--seed", verify.config.seed, "seed for random instances");
  verify_cmd->add_option("--tolerance-scale", verify.config.tolerance_scale, "multiplier on every tolerance")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--oracle-tuples", verify.config.oracle_tuples, "Monte Carlo tuples")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--oracle-plays", verify.config.oracle_plays, "plays per Monte Carlo tuple")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*value_cmd) return run_value(value);
    if (*sweep_cmd) return run_value_sweep(sweep);
    if (*eval_cmd) return run_eval(eval);
    if (*adversary_cmd) return run_adversary(adversary);
    if (*construct_cmd) return run_construct(construct);
    if (*sim_cmd) return run_simulate(sim);
    if (*convert_cmd) return run_rmdp_convert(convert);
    if (*verify_cmd) return run_verify(verify);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
