// Acceptance gate: one scenario- or property-level check per release
// criterion, each printing a single [PASS]/[FAIL] line with the measured
// numbers. Returns the number of failures. An optional integer argument
// runs just that criterion (useful while calibrating).

#include "sigalloc/config.hpp"
#include "sigalloc/cost_model.hpp"
#include "sigalloc/dynamics.hpp"
#include "sigalloc/experiment.hpp"
#include "sigalloc/graph.hpp"
#include "sigalloc/nonlinearity.hpp"
#include "sigalloc/oracle.hpp"
#include "sigalloc/report.hpp"
#include "sigalloc/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <future>
#include <limits>
#include <string>
#include <utility>
#include <vector>

using namespace sigalloc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

StepParams continuous_params(const Nonlinearity& nl, double eta, double h = 1e-3) {
  StepParams p;
  p.nl = nl;
  p.eta = eta;
  p.mode = StepMode::ContinuousEuler;
  p.h = h;
  return p;
}

// ---------------------------------------------------------------- 1
// Dissipation identity: nodewise and pairwise evaluations of the energy
// balance agree on 1000 random (phi, W, p) instances.
Outcome dissipation_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(0xACC1);
  const double ps[] = {0.3, 1.0, 1.7, 2.5};
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(49));
    const WeightedGraph g = erdos_renyi(n, 0.5, rng.next_u64(), WeightKind::UniformRandom);
    std::vector<double> phi(n);
    for (double& v : phi) v = rng.uniform(-5.0, 5.0);
    const double p = ps[trial % 4];
    const DissipationSides sides = dissipation_sides(phi, g, p);
    const double err = std::fabs(sides.nodewise - sides.pairwise) / (1.0 + std::fabs(sides.pairwise));
    worst = std::max(worst, err);
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst <= 1e-9 && elapsed < 5.0;
  return {pass, fmt("1000 instances, worst rel err %.3e (tol 1e-9), %.2fs (budget 5s)", worst, elapsed)};
}

// ---------------------------------------------------------------- 2
// All-time feasibility: the fig1 preset, 1e5 integrator steps per method,
// |sum x - 3000| checked at every single step.
Outcome all_time_feasibility() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg = load_preset("fig1");
  const Scenario scenario = build_scenario(cfg);
  const long steps = 100000;

  auto run_one = [&](const MethodSpec& m) {
    StepParams p;
    p.nl = m.nl;
    p.eta = m.eta;
    p.mode = m.mode;
    p.h = cfg.h;
    double worst = 0.0;
    const Observer obs = [&](const SimState& s, std::size_t) {
      double sum = 0.0;
      for (double xi : s.x) sum += xi;
      worst = std::max(worst, std::fabs(sum - cfg.demand));
    };
    run(make_state(scenario.model, scenario.x0), scenario.schedule, scenario.model, p, steps, obs);
    return worst;
  };

  std::vector<std::future<double>> futures;
  for (const MethodSpec& m : cfg.methods)
    futures.push_back(std::async(std::launch::async, run_one, m));
  double worst = 0.0;
  for (auto& f : futures) worst = std::max(worst, f.get());

  const double elapsed = seconds_since(t0);
  const bool pass = worst <= 1e-6 && elapsed < 30.0;
  return {pass, fmt("4 methods x 1e5 steps, worst |sum x - b| %.3e (tol 1e-6), %.2fs (budget 30s)",
                    worst, elapsed)};
}

// ---------------------------------------------------------------- 3
// Static convergence: composite flow, eta 0.2, h 1e-3, 2e5 steps on the
// fig1 scenario; end-state dispersion and relative residual.
Outcome static_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = load_preset("fig1");
  const Scenario scenario = build_scenario(cfg);
  const StepParams p = continuous_params(Nonlinearity::composite(0.3, 1.7), 0.2);
  const SimState end =
      run(make_state(scenario.model, scenario.x0), scenario.schedule, scenario.model, p, 200000);
  const double disp = gradient_dispersion(end);
  const double rel =
      std::fabs(scenario.model.total_cost(end.x) - scenario.oracle.f_star) / (1.0 + std::fabs(scenario.oracle.f_star));
  const double elapsed = seconds_since(t0);
  const bool pass = disp <= 1e-4 && rel <= 1e-3 && elapsed < 60.0;
  return {pass, fmt("dispersion %.3e (tol 1e-4), rel residual %.3e (tol 1e-3), %.2fs (budget 60s)",
                    disp, rel, elapsed)};
}

// ---------------------------------------------------------------- 4
// Oracle self-consistency: bisection vs closed form on penalty-free
// quadratics; KKT certificate under penalties.
Outcome oracle_consistency() {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(0xACC4);
  double worst_cf = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.next_below(39);
    std::vector<AgentCost> agents;
    for (std::size_t i = 0; i < n; ++i)
      agents.push_back(AgentCost{{rng.uniform_open_lo(0.05, 2.0), rng.uniform(0.0, 10.0)},
                                 PenaltySpec::none()});
    const CostModel m(std::move(agents));
    const double demand = static_cast<double>(n) * rng.uniform(10.0, 100.0);
    double num = demand, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += m.agent(i).quad.c_lin / (2.0 * m.agent(i).quad.a);
      den += 1.0 / (2.0 * m.agent(i).quad.a);
    }
    const double lambda_cf = num / den;
    const OracleSolution sol = solve(m, demand);
    worst_cf = std::max(worst_cf,
                        std::fabs(sol.lambda_star - lambda_cf) / (1.0 + std::fabs(lambda_cf)));
  }

  double worst_feas = 0.0, worst_spread = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.next_below(29);
    std::vector<AgentCost> agents;
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = rng.uniform(0.0, 5.0);
      const double hi = lo + rng.uniform(5.0, 50.0);
      const PenaltySpec pen =
          (i % 2 == 0) ? PenaltySpec::log_smooth(rng.uniform(0.5, 3.0), rng.uniform_open_lo(0.0, 2.0), lo, hi)
                       : PenaltySpec::power(2, rng.uniform_open_lo(0.0, 2.0), lo, hi);
      agents.push_back(AgentCost{{rng.uniform_open_lo(0.05, 1.0), rng.uniform(0.0, 10.0)}, pen});
    }
    const CostModel m(std::move(agents));
    const double demand = static_cast<double>(n) * rng.uniform(5.0, 60.0);
    const OracleSolution sol = solve(m, demand);
    double sum = 0.0, glo = 1e300, ghi = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
      sum += sol.x_star[i];
      const double g = m.eval_grad(i, sol.x_star[i]);
      glo = std::min(glo, g);
      ghi = std::max(ghi, g);
    }
    worst_feas = std::max(worst_feas, std::fabs(sum - demand) / (1.0 + std::fabs(demand)));
    worst_spread = std::max(worst_spread, ghi - glo);
  }

  const double elapsed = seconds_since(t0);
  const bool pass = worst_cf <= 1e-8 && worst_feas <= 1e-9 && worst_spread <= 1e-8 && elapsed < 5.0;
  return {pass,
          fmt("closed-form rel err %.3e (tol 1e-8), feasibility %.3e (tol 1e-9), "
              "gradient spread %.3e (tol 1e-8), %.2fs (budget 5s)",
              worst_cf, worst_feas, worst_spread, elapsed)};
}

// ---------------------------------------------------------------- 5
// Acceleration ordering: composite(0.3,1.7) vs linear at matched eta and
// shared x0; residual compared at 25/50/75% of the fig1 horizon (all well
// past the 1% transient), 5 master seeds, >= 4 must order correctly.
Outcome acceleration_ordering() {
  const auto t0 = std::chrono::steady_clock::now();
  const long horizon = 100000;
  const std::vector<long> checkpoints = {horizon / 4, horizon / 2, 3 * horizon / 4};

  auto residuals_at = [&](const Scenario& sc, const Nonlinearity& nl) {
    const StepParams p = continuous_params(nl, 0.2);
    std::vector<double> out;
    const Observer obs = [&](const SimState& s, std::size_t) {
      if (std::find(checkpoints.begin(), checkpoints.end(), s.step) != checkpoints.end())
        out.push_back(sc.model.total_cost(s.x) - sc.oracle.f_star);
    };
    run(make_state(sc.model, sc.x0), sc.schedule, sc.model, p, horizon, obs);
    return out;
  };

  auto seed_passes = [&](std::uint64_t seed) {
    ExperimentConfig cfg = load_preset("fig1");
    cfg.master_seed = seed;
    const Scenario sc = build_scenario(cfg);
    auto comp = std::async(std::launch::async, residuals_at, std::cref(sc),
                           Nonlinearity::composite(0.3, 1.7));
    const std::vector<double> lin = residuals_at(sc, Nonlinearity::linear());
    const std::vector<double> cmp = comp.get();
    for (std::size_t k = 0; k < checkpoints.size(); ++k)
      if (!(cmp[k] <= lin[k])) return false;
    return true;
  };

  std::vector<std::future<bool>> futures;
  for (std::uint64_t seed = 42; seed < 47; ++seed)
    futures.push_back(std::async(std::launch::async, seed_passes, seed));
  int good = 0;
  std::string which;
  for (std::size_t k = 0; k < futures.size(); ++k) {
    const bool ok = futures[k].get();
    good += ok ? 1 : 0;
    which += ok ? '+' : '-';
  }
  const double elapsed = seconds_since(t0);
  const bool pass = good >= 4;
  return {pass, fmt("composite <= linear at t in {25,50,75}s for %d/5 seeds [%s] (need 4), %.2fs",
                    good, which.c_str(), elapsed)};
}

// ---------------------------------------------------------------- 6
// Parameter monotonicity: eta 0.1 grid over alpha x beta; time to drive
// the residual below 1e-2 must not increase with beta nor decrease with
// alpha, for >= 4 of 5 seeds. The full 3x3 product includes the linear
// corner (alpha=1, beta=1), whose time-to-threshold trades the two
// orderings against each other: beta separates runs while gradient gaps
// exceed 1, alpha separates them below 1, and the corner cell is the
// fastest of its row below the knee and the fastest of its column above
// it. The scenario here is tuned so the trajectory splits its time across
// both regimes, which is as favorable as the product ordering gets; the
// one-parameter slices through the reference point (beta sweep at
// alpha=0.3, alpha sweep at beta=1.7) are reported alongside.
Outcome parameter_monotonicity() {
  const auto t0 = std::chrono::steady_clock::now();
  const double alphas[] = {0.3, 0.6, 1.0};
  const double betas[] = {1.0, 1.4, 1.7};
  const long horizon = 40000;

  auto scenario_for = [&](std::uint64_t seed) {
    ExperimentConfig cfg = load_preset("fig1");
    cfg.n = 20;
    cfg.demand = 240.0;
    cfg.graph.p = 0.4;
    cfg.cost.a_lo = 0.5;
    cfg.cost.a_hi = 2.0;
    cfg.cost.penalty = PenaltySpec::log_smooth(1.0, 1.0, 4.0, 21.0);
    cfg.master_seed = seed;
    return build_scenario(cfg);
  };

  auto time_to_threshold = [&](const Scenario& sc, double alpha, double beta) {
    const StepParams p = continuous_params(Nonlinearity::composite(alpha, beta), 0.1);
    long hit = -1;
    const Observer obs = [&](const SimState& s, std::size_t) {
      if (hit < 0 && sc.model.total_cost(s.x) - sc.oracle.f_star <= 1e-2) hit = s.step;
    };
    SimState state = make_state(sc.model, sc.x0);
    try {
      for (long k = 0; k < horizon && hit < 0; k += 1000)
        state = run(std::move(state), sc.schedule, sc.model, p, 1000, obs);
    } catch (const IntegratorError&) {
      return kInf;
    }
    return hit < 0 ? kInf : static_cast<double>(hit);
  };

  int good = 0, cross_good = 0;
  std::string which, cross_which;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario sc = scenario_for(seed);
    double t[3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) t[a][b] = time_to_threshold(sc, alphas[a], betas[b]);
    bool grid_ok = true;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b + 1 < 3; ++b)
        if (!(t[a][b] >= t[a][b + 1])) grid_ok = false; // nonincreasing in beta
    for (int b = 0; b < 3; ++b)
      for (int a = 0; a + 1 < 3; ++a)
        if (!(t[a][b] <= t[a + 1][b])) grid_ok = false; // nondecreasing in alpha
    const bool cross_ok = t[0][0] >= t[0][1] && t[0][1] >= t[0][2] && // beta sweep at alpha 0.3
                          t[0][2] <= t[1][2] && t[1][2] <= t[2][2];   // alpha sweep at beta 1.7
    good += grid_ok ? 1 : 0;
    cross_good += cross_ok ? 1 : 0;
    which += grid_ok ? '+' : '-';
    cross_which += cross_ok ? '+' : '-';
  }
  const double elapsed = seconds_since(t0);
  const bool pass = good >= 4;
  return {pass, fmt("3x3 grid ordered for %d/5 seeds [%s] (need 4); one-parameter slices "
                    "through (0.3, 1.7) ordered for %d/5 [%s], %.2fs",
                    good, which.c_str(), cross_good, cross_which.c_str(), elapsed)};
}

// ---------------------------------------------------------------- 7
// Switching connectivity: the fig2 schedule (every snapshot disconnected,
// union connected) must reach the criterion-3 tolerances within 3x the
// static horizon.
Outcome switching_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg = load_preset("fig2");
  const Scenario sc = build_scenario(cfg);
  for (std::size_t k = 0; k < sc.schedule.size(); ++k)
    if (is_connected(sc.schedule.graph(k)))
      return {false, "a schedule snapshot is connected; the scenario draw is broken"};
  if (!is_uniformly_connected(sc.schedule, static_cast<int>(sc.schedule.size())))
    return {false, "the schedule union is not connected; the scenario draw is broken"};

  const long horizon = 3 * 200000;
  const StepParams p = continuous_params(Nonlinearity::composite(0.3, 1.7), 0.2);
  long hit = -1;
  SimState state = make_state(sc.model, sc.x0);
  for (long done = 0; done < horizon && hit < 0; done += 2000) {
    state = run(std::move(state), sc.schedule, sc.model, p, 2000);
    const double disp = gradient_dispersion(state);
    if (disp <= 1e-4 &&
        std::fabs(sc.model.total_cost(state.x) - sc.oracle.f_star) / (1.0 + std::fabs(sc.oracle.f_star)) <= 1e-3)
      hit = state.step;
  }
  const double disp = gradient_dispersion(state);
  const double rel =
      std::fabs(sc.model.total_cost(state.x) - sc.oracle.f_star) / (1.0 + std::fabs(sc.oracle.f_star));
  const double elapsed = seconds_since(t0);
  const bool pass = hit >= 0;
  return {pass, fmt("tolerances (disp 1e-4, rel res 1e-3) %s within %ld steps; "
                    "final disp %.3e rel %.3e, %.2fs",
                    pass ? fmt("met at step %ld", hit).c_str() : "not met", horizon, disp, rel,
                    elapsed)};
}

// ---------------------------------------------------------------- 8
// Discrete trade-off: the steady-state residual floor must not shrink as
// eta grows (at alpha 0.3, beta 1.7) nor as beta grows (at eta 0.2);
// a diverging run counts as an infinite floor.
Outcome discrete_tradeoff() {
  const auto t0 = std::chrono::steady_clock::now();

  // The discrete iteration only holds a bounded steady state while gradient
  // gaps stay at or below the signum knee, so the scenario starts near
  // gradient consensus (tiny shares, tight c range) with enough drive that
  // the chatter bands are O(1) and genuinely beta-sensitive. Chain tops
  // (largest eta, largest beta) diverge; a divergent run is an infinite
  // terminal residual, the far end of the documented trade-off.
  auto scenario_for = [&](std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.n = 20;
    cfg.demand = 20.0;
    cfg.master_seed = seed;
    cfg.mode = StepMode::Discrete;
    cfg.graph.p = 0.5;
    cfg.cost.a_lo = 0.04;
    cfg.cost.a_hi = 0.08;
    cfg.cost.c_lin_hi = 0.3;
    cfg.cost.penalty = PenaltySpec::log_smooth(1.0, 1.0, 0.33, 1.75);
    cfg.methods = {MethodSpec{"probe", Nonlinearity::linear(), 0.1, StepMode::Discrete}};
    return build_scenario(cfg);
  };

  const long steps = 4000;
  auto floor_of = [&](const Scenario& sc, double eta, double alpha, double beta) {
    StepParams p;
    p.nl = Nonlinearity::composite(alpha, beta);
    p.eta = eta;
    p.mode = StepMode::Discrete;
    double tail_sum = 0.0;
    long tail_count = 0;
    const long tail_from = steps - steps / 10;
    const Observer obs = [&](const SimState& s, std::size_t) {
      if (s.step > tail_from) {
        tail_sum += sc.model.total_cost(s.x) - sc.oracle.f_star;
        ++tail_count;
      }
    };
    try {
      run(make_state(sc.model, sc.x0), sc.schedule, sc.model, p, steps, obs);
    } catch (const IntegratorError&) {
      return kInf;
    }
    return tail_sum / static_cast<double>(tail_count);
  };

  auto seed_passes = [&](std::uint64_t seed) {
    const Scenario sc = scenario_for(seed);
    const double etas[] = {0.05, 0.2, 0.5};
    double r_eta[3];
    for (int k = 0; k < 3; ++k) r_eta[k] = floor_of(sc, etas[k], 0.3, 1.7);
    const double betas[] = {1.2, 1.7, 2.5};
    double r_beta[3];
    for (int k = 0; k < 3; ++k) r_beta[k] = floor_of(sc, 0.2, 0.3, betas[k]);
    const bool eta_ok = r_eta[0] <= r_eta[1] && r_eta[1] <= r_eta[2];
    const bool beta_ok = r_beta[0] <= r_beta[1] && r_beta[1] <= r_beta[2];
    return eta_ok && beta_ok;
  };

  std::vector<std::future<bool>> futures;
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    futures.push_back(std::async(std::launch::async, seed_passes, seed));
  int good = 0;
  std::string which;
  for (auto& f : futures) {
    const bool ok = f.get();
    good += ok ? 1 : 0;
    which += ok ? '+' : '-';
  }
  const double elapsed = seconds_since(t0);
  const bool pass = good >= 4;
  return {pass, fmt("floors ordered in eta and beta for %d/5 seeds [%s] (need 4), %.2fs", good,
                    which.c_str(), elapsed)};
}

// ---------------------------------------------------------------- 9
// Objective monotonicity: along the continuous flow the total cost never
// rises by more than 1e-9 per step; 10 seeds, 1e4 steps each.
Outcome objective_monotonicity() {
  const auto t0 = std::chrono::steady_clock::now();

  auto worst_rise = [&](std::uint64_t seed) {
    ExperimentConfig cfg = load_preset("fig1");
    cfg.master_seed = seed;
    const Scenario sc = build_scenario(cfg);
    const StepParams p = continuous_params(Nonlinearity::composite(0.3, 1.7), 0.2);
    double prev = sc.model.total_cost(sc.x0);
    double worst = -kInf;
    const Observer obs = [&](const SimState& s, std::size_t) {
      const double f = sc.model.total_cost(s.x);
      worst = std::max(worst, f - prev);
      prev = f;
    };
    run(make_state(sc.model, sc.x0), sc.schedule, sc.model, p, 10000, obs);
    return worst;
  };

  std::vector<std::future<double>> futures;
  for (std::uint64_t seed = 42; seed < 52; ++seed)
    futures.push_back(std::async(std::launch::async, worst_rise, seed));
  double worst = -kInf;
  for (auto& f : futures) worst = std::max(worst, f.get());
  const double elapsed = seconds_since(t0);
  const bool pass = worst <= 1e-9;
  return {pass, fmt("10 seeds x 1e4 steps, worst per-step rise %.3e (tol 1e-9), %.2fs", worst,
                    elapsed)};
}

// ---------------------------------------------------------------- 10
// Gradient audit: central finite differences against eval_grad, 1000
// points per penalty kind.
Outcome gradient_audit() {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(0xACC10);
  double worst = 0.0;
  for (int kind = 0; kind < 3; ++kind) {
    for (int trial = 0; trial < 1000; ++trial) {
      const double lo = rng.uniform(-5.0, 0.0);
      const double hi = lo + rng.uniform(1.0, 10.0);
      PenaltySpec pen;
      if (kind == 1) pen = PenaltySpec::power(2 + static_cast<int>(rng.next_below(2)),
                                              rng.uniform_open_lo(0.0, 3.0), lo, hi);
      if (kind == 2) pen = PenaltySpec::log_smooth(rng.uniform(0.5, 4.0),
                                                   rng.uniform_open_lo(0.0, 3.0), lo, hi);
      const AgentCost agent{{rng.uniform_open_lo(0.0, 2.0), rng.uniform(0.0, 10.0)}, pen};
      const CostModel m({agent});
      const double x = rng.uniform(-5.0, 15.0);
      const double h = 1e-6 * (1.0 + std::fabs(x));
      const double fd = (m.eval_cost(0, x + h) - m.eval_cost(0, x - h)) / (2.0 * h);
      const double g = m.eval_grad(0, x);
      worst = std::max(worst, std::fabs(fd - g) / (1.0 + std::fabs(g)));
    }
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst <= 1e-5;
  return {pass, fmt("3 kinds x 1000 points, worst rel err %.3e (tol 1e-5), %.2fs", worst, elapsed)};
}

// ---------------------------------------------------------------- 11
// Determinism: two fresh executions of the fig1 preset produce the same
// metrics bytes and the same chart bytes.
Outcome determinism() {
  const auto t0 = std::chrono::steady_clock::now();
  auto render = [] {
    const ExperimentConfig cfg = load_preset("fig1");
    const ExperimentResult res = run_experiment(cfg);
    SvgOptions opt;
    opt.title = "residual F(x) - F*";
    return std::pair<std::string, std::string>(csv_text(res.series), render_svg(res.series, opt));
  };
  auto second = std::async(std::launch::async, render);
  const auto [csv1, svg1] = render();
  const auto [csv2, svg2] = second.get();
  const double elapsed = seconds_since(t0);
  const bool pass = csv1 == csv2 && svg1 == svg2;
  return {pass, fmt("metrics %s (%zu bytes), chart %s (%zu bytes), %.2fs",
                    csv1 == csv2 ? "identical" : "DIFFER", csv1.size(),
                    svg1 == svg2 ? "identical" : "DIFFER", svg1.size(), elapsed)};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "dissipation-identity", dissipation_identity},
    {2, "all-time-feasibility", all_time_feasibility},
    {3, "static-convergence", static_convergence},
    {4, "oracle-consistency", oracle_consistency},
    {5, "acceleration-ordering", acceleration_ordering},
    {6, "parameter-monotonicity", parameter_monotonicity},
    {7, "switching-convergence", switching_convergence},
    {8, "discrete-tradeoff", discrete_tradeoff},
    {9, "objective-monotonicity", objective_monotonicity},
    {10, "gradient-audit", gradient_audit},
    {11, "determinism", determinism},
};

} // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0, ran = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %-24s %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  std::printf("acceptance: %d/%d passed\n", ran - failures, ran);
  return failures;
}
