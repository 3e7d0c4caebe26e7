#include "blackwell/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace blackwell {

namespace {

constexpr double kPolishFloor = 1e-6;
constexpr std::size_t kTop = 0;

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

bool lexicographically_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

void compositions(std::size_t dim, std::size_t remaining, std::size_t divisions,
                  std::vector<std::size_t>& counts, std::vector<Vector>& out) {
  const std::size_t pos = counts.size();
  if (pos + 1 == dim) {
    counts.push_back(remaining);
    Vector y(ix(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      y[ix(i)] = static_cast<double>(counts[i]) / static_cast<double>(divisions);
    }
    out.push_back(std::move(y));
    counts.pop_back();
    return;
  }
  for (std::size_t c = 0; c <= remaining; ++c) {
    counts.push_back(c);
    compositions(dim, remaining - c, divisions, counts, out);
    counts.pop_back();
  }
}

Vector three(double left, double middle, double right) { return make_vector({left, middle, right}); }

// Tracks the minimizer with the deterministic tie-break.
struct Incumbent {
  Vector y;
  double gamma = std::numeric_limits<double>::infinity();

  bool offer(const Vector& candidate, double value) {
    if (value < gamma || (value == gamma && lexicographically_less(candidate, y))) {
      y = candidate;
      gamma = value;
      return true;
    }
    return false;
  }
};

}  // namespace

std::vector<Vector> simplex_grid(std::size_t dim, std::size_t divisions) {
  if (dim == 0 || divisions == 0) throw std::invalid_argument("simplex grid needs dim, divisions > 0");
  std::vector<Vector> out;
  std::vector<std::size_t> counts;
  compositions(dim, divisions, divisions, counts, out);
  return out;
}

BestResponse best_response_search(const AbsorbingGame& game, const Automaton& sigma,
                                  double lambda, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.5)) throw std::invalid_argument("grid step must lie in (0, 1/2]");
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("discount rate must lie in (0,1)");
  const auto cols = game.num_actions_p2();
  sigma.require_compatible(game.num_actions_p1(), cols);

  BestResponse out;
  Incumbent best;
  auto evaluate = [&](const Vector& y) {
    ++out.evaluations;
    return eval_discounted(game, sigma, y, lambda).gamma;
  };

  const auto divisions = static_cast<std::size_t>(std::llround(1.0 / grid_step));
  std::vector<Vector> candidates = simplex_grid(cols, divisions);
  for (std::size_t b = 0; b < cols; ++b) candidates.push_back(point_mass(cols, b));
  if (cols == 3) {
    std::vector<double> levels;
    for (std::size_t k = 1; k < divisions; ++k) {
      levels.push_back(static_cast<double>(k) / static_cast<double>(divisions));
    }
    for (int e = 1; e <= 8; ++e) levels.push_back(std::pow(10.0, -e));
    for (double q : levels) {
      candidates.push_back(three(0.0, 1.0 - q, q));
      candidates.push_back(three(1.0 - q, 0.0, q));
      candidates.push_back(three(q, 0.0, 1.0 - q));
    }
  }
  for (const auto& y : candidates) best.offer(y, evaluate(y));

  // Pairwise transfers keep y on the simplex.
  for (double step = grid_step; step >= kPolishFloor;) {
    bool improved = false;
    for (std::size_t to = 0; to < cols; ++to) {
      for (std::size_t from = 0; from < cols; ++from) {
        if (to == from || best.y[ix(from)] <= 0.0) continue;
        Vector y = best.y;
        const double moved = std::min(step, y[ix(from)]);
        y[ix(from)] -= moved;
        y[ix(to)] += moved;
        const double value = evaluate(y);
        if (value < best.gamma) {
          best.offer(y, value);
          improved = true;
        }
      }
    }
    if (!improved) step /= 2.0;
  }

  out.y = best.y;
  out.gamma = best.gamma;
  return out;
}

double CertifiedBound::term(const std::string& name) const {
  for (const auto& [key, value] : terms) {
    if (key == name) return value;
  }
  throw std::out_of_range("certificate has no term '" + name + "'");
}

double psi(double c, double q) {
  return std::exp(-q * c) * (1.0 + q) / 2.0 - q * q * c * c;
}

double reference_phi(double x, double q) {
  return std::exp(-q * x) * (0.5 + q) - q * q * x * x;
}

AdversaryConstants choose_constants() {
  AdversaryConstants best;
  best.eps_star = -std::numeric_limits<double>::infinity();
  for (int ci = 70; ci <= 99; ++ci) {
    const double c = ci / 100.0;
    for (int qi = 1; qi <= 100; ++qi) {
      const double q = qi * 0.005;
      const double eps = std::min(psi(c, q) - 0.5, 0.5 - std::exp(-c));
      if (eps > best.eps_star) best = {c, q, eps};
    }
  }
  return best;
}

CertifiedBound markovian_adversary(const MarkovianStrategy& m, double c, double q) {
  if (!(c > std::numbers::ln2)) throw std::invalid_argument("c must exceed ln 2");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
  if (m.tail.size() != 2) throw std::invalid_argument("expected a strategy over {Top, Bottom}");

  const std::vector<std::size_t> top{kTop};
  CertifiedBound out;
  out.terms.emplace_back("c", c);
  out.terms.emplace_back("q", q);

  if (tail_top_probability(m, top) > 0.0) {
    out.case_label = "divergent";
    out.y = three(0.0, 1.0, 0.0);
    out.bound = 0.0;
    out.terms.emplace_back("sum_p", std::numeric_limits<double>::infinity());
    return out;
  }

  double sum = 0.0;
  for (const auto& stage : m.prefix) sum += stage[ix(kTop)];
  out.terms.emplace_back("sum_p", sum);

  if (sum >= c) {
    out.case_label = "large-sum";
    out.y = three(0.0, 1.0, 0.0);
    // P(N = 0) = prod(1 - p_t) <= e^{-sum}.
    out.bound = std::exp(-sum);
    out.terms.emplace_back("exp_minus_sum", out.bound);
    return out;
  }

  out.case_label = "small-sum";
  out.y = three(q, 0.0, 1.0 - q);
  const double mean = q * sum;
  const double poisson_hit = 1.0 - std::exp(-mean);
  const double lecam_error = mean * mean;
  out.bound = (1.0 - q) / 2.0 + (poisson_hit + lecam_error) * (1.0 + q) / 2.0;
  out.terms.emplace_back("poisson_positive", poisson_hit);
  out.terms.emplace_back("lecam_error", lecam_error);
  out.terms.emplace_back("psi", psi(sum, q));
  out.terms.emplace_back("reference_phi", reference_phi(sum, q));
  return out;
}

LeCamReport lecam_check(const std::vector<double>& params, std::size_t k_max) {
  for (double p : params) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("Bernoulli parameters must lie in [0,1]");
  }
  // law[k] = P(sum of the first t variables = k)
  std::vector<double> law{1.0};
  double mean = 0.0;
  LeCamReport out;
  for (double p : params) {
    law.push_back(0.0);
    for (std::size_t k = law.size() - 1; k > 0; --k) law[k] = law[k] * (1.0 - p) + law[k - 1] * p;
    law[0] *= 1.0 - p;
    mean += p;
    out.bound += p * p;
  }
  double poisson = std::exp(-mean);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double exact = k < law.size() ? law[k] : 0.0;
    out.exact.push_back(exact);
    out.poisson.push_back(poisson);
    out.max_deviation = std::max(out.max_deviation, std::abs(exact - poisson));
    poisson *= mean / static_cast<double>(k + 1);
  }
  return out;
}

CertifiedBound blind_adversary_trap(const Automaton& sigma, double eps_inner) {
  if (!sigma.is_autonomous()) throw std::invalid_argument("blind adversary needs an autonomous automaton");
  if (sigma.num_actions() != 2) throw std::invalid_argument("expected a strategy over {Top, Bottom}");
  if (!(eps_inner > 0.0)) throw std::invalid_argument("eps_inner must be positive");

  const std::vector<std::size_t> top{kTop};
  const double none = generating_function(sigma, top, 0.0);
  const double some = 1.0 - none;

  CertifiedBound out;
  out.terms.emplace_back("prob_top_played", some);
  if (some >= 2.0 / 3.0) {
    out.case_label = "mostly-top";
    out.y = three(0.0, 1.0, 0.0);
    out.bound = none;
    return out;
  }
  if (some <= 1.0 / 3.0) {
    out.case_label = "mostly-bottom";
    out.y = three(1.0, 0.0, 0.0);
    out.bound = some;
    return out;
  }

  // March the law of the internal state on the event "no Top yet".
  const auto k = sigma.size();
  Eigen::RowVectorXd pending = sigma.mu0().transpose();
  Vector top_prob(ix(k));
  Matrix stay(ix(k), ix(k));
  for (std::size_t s = 0; s < k; ++s) {
    top_prob[ix(s)] = sigma.action(s)[ix(kTop)];
    stay.row(ix(s)) = (1.0 - top_prob[ix(s)]) * sigma.next(s).transpose();
  }
  double reached = 0.0;
  std::size_t horizon = 0;
  while (reached < some - eps_inner) {
    if (++horizon > kFirstTopSearchCap) {
      throw std::runtime_error("first Top play does not concentrate within the search cap");
    }
    reached += pending.dot(top_prob);
    pending = pending * stay;
  }
  const double eta = eps_inner / static_cast<double>(horizon);
  out.case_label = "balanced";
  out.y = three(0.0, 1.0 - eta, eta);
  out.bound = 1.0 / 3.0 + eps_inner;
  out.terms.emplace_back("horizon", static_cast<double>(horizon));
  out.terms.emplace_back("prob_first_top_by_horizon", reached);
  out.terms.emplace_back("eta", eta);
  return out;
}

}  // namespace blackwell
