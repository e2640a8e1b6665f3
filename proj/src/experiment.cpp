#include "sigalloc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "sigalloc/rng.hpp"

namespace sigalloc {
namespace {

// Signed-power flows chatter around a dispersion floor of roughly
// (h*eta*...)^(1/alpha) under fixed-step integration, so the gate has to sit
// above that floor; 1e-4 matches the consensus tolerance used by the checks.
constexpr double kConvergedDispersion = 1e-4;
constexpr long kConvergedStreak = 100;
constexpr long kDenseRecordLimit = 10000;
constexpr long kSparseStride = 10;
constexpr int kGraphAttempts = 200;

// Seed streams of the master seed.
constexpr std::uint64_t kCostStream = 0;
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kGraphStreamBase = 2;

CostModel draw_cost_model(const ExperimentConfig& cfg) {
  SplitMix64 rng(derive_seed(cfg.master_seed, kCostStream));
  std::vector<AgentCost> agents;
  agents.reserve(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    AgentCost ac;
    ac.quad.a = rng.uniform_open_lo(cfg.cost.a_lo, cfg.cost.a_hi);
    ac.quad.c_lin = rng.uniform_open_lo(cfg.cost.c_lin_lo, cfg.cost.c_lin_hi);
    ac.penalty = cfg.cost.penalty;
    agents.push_back(ac);
  }
  return CostModel(std::move(agents));
}

// Two ER halves over a shuffled node split, no cross edges: disconnected by
// construction for n >= 2.
WeightedGraph split_erdos_renyi(int n, double p, std::uint64_t seed, WeightKind weights) {
  SplitMix64 rng(seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[i], order[j]);
  }
  const int half = n / 2;
  std::vector<Edge> edges;
  for (int side = 0; side < 2; ++side) {
    const int lo = side == 0 ? 0 : half;
    const int hi = side == 0 ? half : n;
    if (hi - lo < 2) continue; // one-node side: stays isolated
    const WeightedGraph part =
        erdos_renyi(hi - lo, p, derive_seed(seed, static_cast<std::uint64_t>(side)), weights);
    for (const Edge& e : part.edges()) {
      edges.push_back(Edge{order[lo + e.i], order[lo + e.j], e.w});
    }
  }
  return WeightedGraph(n, std::move(edges));
}

GraphSchedule draw_schedule(const ExperimentConfig& cfg) {
  const int n = static_cast<int>(cfg.n);
  const std::size_t count = cfg.graph.count;
  const SchedulePolicy policy = count == 1 ? SchedulePolicy::Static : SchedulePolicy::RoundRobin;
  for (int attempt = 0; attempt < kGraphAttempts; ++attempt) {
    std::vector<WeightedGraph> graphs;
    graphs.reserve(count);
    for (std::size_t g = 0; g < count; ++g) {
      const std::uint64_t seed =
          derive_seed(cfg.master_seed, kGraphStreamBase + static_cast<std::uint64_t>(attempt) * count + g);
      graphs.push_back(cfg.graph.split_components ? split_erdos_renyi(n, cfg.graph.p, seed, cfg.graph.weights)
                                                  : erdos_renyi(n, cfg.graph.p, seed, cfg.graph.weights));
    }
    if (cfg.graph.split_components) {
      bool all_split = true;
      for (const WeightedGraph& g : graphs) {
        if (is_connected(g)) {
          all_split = false;
          break;
        }
      }
      if (!all_split) continue;
    }
    GraphSchedule schedule(std::move(graphs), cfg.graph.dwell, policy);
    if (is_uniformly_connected(schedule, static_cast<int>(count))) return schedule;
  }
  throw std::runtime_error("graph draw failed: no valid schedule after " + std::to_string(kGraphAttempts) +
                           " attempts; raise p or the graph count");
}

MethodSeries run_method(const MethodSpec& spec, const Scenario& scenario, const ExperimentConfig& cfg,
                        double lipschitz) {
  MethodSeries out;
  out.label = spec.label;
  out.eta_warning = lipschitz > 0.0 && spec.eta > 1.0 / lipschitz;

  StepParams params;
  params.eta = spec.eta;
  params.nl = spec.nl;
  params.mode = spec.mode;
  params.h = cfg.h;

  const double f_star = scenario.oracle.f_star;
  const double demand = cfg.demand;
  const long steps = cfg.steps;
  long streak = 0;

  const auto should_record = [&](long step) {
    if (step == steps) return true;
    if (cfg.record_every > 0) return step % cfg.record_every == 0;
    return step <= kDenseRecordLimit || step % kSparseStride == 0;
  };

  const Observer observer = [&](const SimState& s, std::size_t /*active*/) {
    const double dispersion = gradient_dispersion(s);
    if (dispersion < kConvergedDispersion) {
      if (++streak >= kConvergedStreak && !out.converged) {
        out.converged = true;
        out.converged_step = s.step;
      }
    } else {
      streak = 0;
    }
    if (!should_record(s.step)) return;
    MetricsRecord rec;
    rec.step = s.step;
    rec.time = spec.mode == StepMode::Discrete ? static_cast<double>(s.step) : s.time;
    rec.residual = scenario.model.total_cost(s.x) - f_star;
    double sum = 0.0;
    for (double v : s.x) sum += v;
    rec.feasibility_gap = std::fabs(sum - demand);
    rec.dispersion = dispersion;
    out.records.push_back(rec);
  };

  SimState state = make_state(scenario.model, scenario.x0);
  try {
    state = run(std::move(state), scenario.schedule, scenario.model, params, steps, observer);
  } catch (const IntegratorError& e) {
    out.aborted = true;
    out.abort_message = e.what();
  }
  out.final_x = state.x;
  return out;
}

} // namespace

void validate_config(const ExperimentConfig& cfg) {
  const auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (cfg.n < 1) fail("n must be >= 1");
  if (!std::isfinite(cfg.demand)) fail("demand must be finite");
  if (cfg.steps < 0) fail("steps must be >= 0");
  if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) fail("h must be > 0");
  if (cfg.record_every < 0) fail("record_every must be >= 0");
  if (!(cfg.cost.a_lo < cfg.cost.a_hi)) fail("cost a range is empty");
  if (!(cfg.cost.c_lin_lo < cfg.cost.c_lin_hi)) fail("cost c_lin range is empty");
  if (!(cfg.cost.a_lo >= 0.0)) fail("cost a range must start at >= 0");
  if (!(cfg.graph.p >= 0.0 && cfg.graph.p <= 1.0)) fail("graph p must be in [0, 1]");
  if (cfg.graph.count < 1) fail("graph count must be >= 1");
  if (!(cfg.graph.dwell > 0.0)) fail("graph dwell must be > 0");
  if (cfg.graph.split_components && cfg.graph.count < 2) fail("split_components needs graph count >= 2");
  if (!(cfg.oracle.feas_tol > 0.0) || !(cfg.oracle.grad_tol > 0.0)) fail("oracle tolerances must be > 0");
  std::set<std::string> labels;
  for (const MethodSpec& m : cfg.methods) {
    if (m.label.empty()) fail("method label must not be empty");
    if (!labels.insert(m.label).second) fail("duplicate method label '" + m.label + "'");
    if (!(m.eta > 0.0) || !std::isfinite(m.eta)) fail("method '" + m.label + "': eta must be > 0");
  }
}

std::vector<double> make_feasible_initial(std::size_t n, double demand, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("make_feasible_initial: n must be >= 1");
  SplitMix64 rng(seed);
  std::vector<double> x(n);
  const double hi = 2.0 * demand / static_cast<double>(n);
  double sum = 0.0;
  for (double& v : x) {
    v = rng.uniform(0.0, hi);
    sum += v;
  }
  const double shift = (demand - sum) / static_cast<double>(n);
  for (double& v : x) v += shift;
  return x;
}

Scenario build_scenario(const ExperimentConfig& cfg) {
  validate_config(cfg);
  CostModel model = draw_cost_model(cfg);
  GraphSchedule schedule = draw_schedule(cfg);
  std::vector<double> x0 = make_feasible_initial(cfg.n, cfg.demand, derive_seed(cfg.master_seed, kInitStream));
  OracleSolution sol = solve(model, cfg.demand, cfg.oracle);
  return Scenario{std::move(model), std::move(schedule), std::move(x0), std::move(sol)};
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const Scenario scenario = build_scenario(cfg);
  return run_experiment(cfg, scenario);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const Scenario& scenario) {
  validate_config(cfg);
  ExperimentResult result;
  result.oracle = scenario.oracle;
  result.lipschitz = lipschitz_bound(scenario.model);

  std::vector<std::future<MethodSeries>> futures;
  futures.reserve(cfg.methods.size());
  for (const MethodSpec& spec : cfg.methods) {
    futures.push_back(std::async(std::launch::async, [&spec, &scenario, &cfg, &result] {
      return run_method(spec, scenario, cfg, result.lipschitz);
    }));
  }
  result.series.reserve(futures.size());
  for (auto& f : futures) result.series.push_back(f.get());
  return result;
}

} // namespace sigalloc
