#include "sigalloc/check.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "sigalloc/dynamics.hpp"
#include "sigalloc/experiment.hpp"
#include "sigalloc/oracle.hpp"
#include "sigalloc/rng.hpp"

namespace sigalloc {
namespace {

std::string msg(const char* fmt, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

PenaltySpec draw_penalty(SplitMix64& rng) {
  switch (rng.next_below(3)) {
    case 0: return PenaltySpec::none();
    case 1: return PenaltySpec::power(2, rng.uniform_open_lo(0.0, 2.0), 0.0, 10.0);
    default: return PenaltySpec::log_smooth(rng.uniform_open_lo(0.5, 2.0), 1.0, 0.0, 10.0);
  }
}

CostModel draw_model(SplitMix64& rng, std::size_t n, double a_hi, double c_hi) {
  std::vector<AgentCost> agents(n);
  for (AgentCost& ac : agents) {
    ac.quad.a = rng.uniform_open_lo(0.0, a_hi);
    ac.quad.c_lin = rng.uniform_open_lo(0.0, c_hi);
    ac.penalty = draw_penalty(rng);
  }
  return CostModel(std::move(agents));
}

Nonlinearity draw_nonlinearity(SplitMix64& rng) {
  switch (rng.next_below(4)) {
    case 0: return Nonlinearity::composite(0.3, 1.7);
    case 1: return Nonlinearity::linear();
    case 2: return Nonlinearity::finite_time(0.7);
    default: return Nonlinearity::saturated(1.0);
  }
}

// Connected ER draw with deterministic retry.
WeightedGraph draw_connected(int n, std::uint64_t seed) {
  for (std::uint64_t salt = 0;; ++salt) {
    WeightedGraph g = erdos_renyi(n, 0.5, derive_seed(seed, salt));
    if (is_connected(g)) return g;
  }
}

std::string check_dissipation(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int n = 2 + static_cast<int>(rng.next_below(29));
  const WeightedGraph g = erdos_renyi(n, 0.5, rng.next_u64(), WeightKind::UniformRandom);
  std::vector<double> phi(n);
  for (double& v : phi) v = rng.uniform(-5.0, 5.0);
  static const double kP[] = {0.3, 1.0, 1.7, 2.5};
  const double p = kP[rng.next_below(4)];
  const DissipationSides sides = dissipation_sides(phi, g, p);
  const double err = std::fabs(sides.nodewise - sides.pairwise);
  if (err > 1e-9 * (1.0 + std::fabs(sides.pairwise))) {
    return msg("identity mismatch: nodewise=%.17g pairwise=%.17g", sides.nodewise, sides.pairwise);
  }
  return {};
}

std::string check_conservation(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::size_t n = 2 + rng.next_below(19);
  const CostModel model = draw_model(rng, n, 0.1, 5.0);
  const double demand = 2.0 * static_cast<double>(n);
  const WeightedGraph g = erdos_renyi(static_cast<int>(n), 0.5, rng.next_u64());
  std::vector<double> x0 = make_feasible_initial(n, demand, rng.next_u64());

  StepParams params;
  params.eta = 0.002;
  params.nl = draw_nonlinearity(rng);
  params.mode = StepMode::Discrete;

  double worst = 0.0;
  const Observer obs = [&](const SimState& s, std::size_t) {
    double sum = 0.0;
    for (double v : s.x) sum += v;
    worst = std::max(worst, std::fabs(sum - demand));
  };
  run(make_state(model, std::move(x0)), GraphSchedule::single(g), model, params, 200, obs);
  if (worst > 1e-9 * (1.0 + std::fabs(demand))) {
    return msg("sum drifted by %.3e (demand %.17g)", worst, demand);
  }
  return {};
}

std::string check_lyapunov(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::size_t n = 3 + rng.next_below(17);
  const CostModel model = draw_model(rng, n, 0.3, 10.0);
  const double demand = 30.0 * static_cast<double>(n);
  const WeightedGraph g = draw_connected(static_cast<int>(n), rng.next_u64());
  std::vector<double> x0 = make_feasible_initial(n, demand, rng.next_u64());

  StepParams params;
  params.eta = 0.2;
  params.nl = Nonlinearity::composite(0.3, 1.7);
  params.mode = StepMode::ContinuousEuler;
  params.h = 1e-4;

  double prev = model.total_cost(x0);
  std::string failure;
  const Observer obs = [&](const SimState& s, std::size_t) {
    if (!failure.empty()) return;
    const double f = model.total_cost(s.x);
    if (f > prev + 1e-9 * (1.0 + std::fabs(prev))) {
      failure = msg("objective rose from %.17g to %.17g", prev, f);
    }
    prev = f;
  };
  run(make_state(model, std::move(x0)), GraphSchedule::single(g), model, params, 300, obs);
  return failure;
}

std::string check_oracle_kkt(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::size_t n = 2 + rng.next_below(29);
  const CostModel model = draw_model(rng, n, 0.3, 10.0);
  const double demand = rng.uniform(10.0, 100.0) * static_cast<double>(n);
  const OracleSolution sol = solve(model, demand);
  double sum = 0.0;
  for (double v : sol.x_star) sum += v;
  if (std::fabs(sum - demand) > 1e-9 * (1.0 + std::fabs(demand))) {
    return msg("infeasible: sum=%.17g demand=%.17g", sum, demand);
  }
  double g_lo = 0.0, g_hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double gr = model.eval_grad(i, sol.x_star[i]);
    if (i == 0) g_lo = g_hi = gr;
    g_lo = std::min(g_lo, gr);
    g_hi = std::max(g_hi, gr);
  }
  if (g_hi - g_lo > 1e-8) {
    return msg("gradient spread %.3e at lambda=%.17g", g_hi - g_lo, sol.lambda_star);
  }
  return {};
}

std::string check_gradient_fd(std::uint64_t seed) {
  SplitMix64 rng(seed);
  AgentCost ac;
  ac.quad.a = rng.uniform_open_lo(0.0, 0.3);
  ac.quad.c_lin = rng.uniform_open_lo(0.0, 10.0);
  ac.penalty = draw_penalty(rng);
  const CostModel model({ac});
  const double x = rng.uniform(-5.0, 15.0);
  const double h = 1e-5 * (1.0 + std::fabs(x));
  const double fd = (model.eval_cost(0, x + h) - model.eval_cost(0, x - h)) / (2.0 * h);
  const double g = model.eval_grad(0, x);
  if (std::fabs(fd - g) > 1e-5 * (1.0 + std::fabs(g))) {
    return msg("finite difference %.17g vs gradient %.17g", fd, g);
  }
  return {};
}

} // namespace

std::vector<CheckResult> run_property_checks(std::uint64_t seed, long trials) {
  struct Prop {
    const char* name;
    std::string (*trial)(std::uint64_t);
  };
  static const Prop props[] = {
      {"dissipation-identity", check_dissipation},   {"conservation", check_conservation},
      {"lyapunov-decrease", check_lyapunov}, {"oracle-kkt", check_oracle_kkt},
      {"gradient-fd", check_gradient_fd},
  };

  std::vector<CheckResult> results;
  for (std::size_t k = 0; k < sizeof(props) / sizeof(props[0]); ++k) {
    CheckResult r;
    r.name = props[k].name;
    r.trials = trials;
    r.pass = true;
    const std::uint64_t prop_seed = derive_seed(seed, k);
    for (long t = 0; t < trials; ++t) {
      std::string failure;
      try {
        failure = props[k].trial(derive_seed(prop_seed, static_cast<std::uint64_t>(t)));
      } catch (const std::exception& e) {
        failure = e.what();
      }
      if (!failure.empty()) {
        r.pass = false;
        r.detail = "trial " + std::to_string(t) + ": " + failure;
        break;
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

} // namespace sigalloc
