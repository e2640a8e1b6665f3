#include "sigalloc/dynamics.hpp"

#include <cmath>
#include <string>

namespace sigalloc {
namespace {

void check_sizes(const SimState& state, const WeightedGraph& g) {
  if (static_cast<int>(state.x.size()) != g.node_count())
    throw std::invalid_argument("state length does not match graph node count");
  if (state.cached_grads.size() != state.x.size())
    throw std::invalid_argument("cached gradient length does not match state");
}

void refresh_grads(SimState& state, const CostModel& model) {
  for (std::size_t i = 0; i < state.x.size(); ++i)
    state.cached_grads[i] = model.eval_grad(i, state.x[i]);
}

void ensure_finite(const SimState& state) {
  for (std::size_t i = 0; i < state.x.size(); ++i)
    if (!std::isfinite(state.x[i]) || !std::isfinite(state.cached_grads[i]))
      throw IntegratorError(state.step, "non-finite state at agent " + std::to_string(i) +
                                            " after step " + std::to_string(state.step));
}

// flows[e] for the current cached gradients; writes into the given buffer.
void compute_flows(const SimState& state, const WeightedGraph& g, const Nonlinearity& nl,
                   std::vector<double>& flows) {
  const auto& edges = g.edges();
  flows.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& ed = edges[e];
    flows[e] = ed.w * nl.eval(state.cached_grads[ed.i] - state.cached_grads[ed.j]);
  }
}

// Antisymmetric apply: the same scaled flow leaves one endpoint and enters
// the other.
void apply_flows(std::vector<double>& x, const WeightedGraph& g, const std::vector<double>& flows,
                 double scale) {
  const auto& edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double q = scale * flows[e];
    x[edges[e].i] -= q;
    x[edges[e].j] += q;
  }
}

} // namespace

SimState make_state(const CostModel& model, std::vector<double> x0) {
  if (x0.size() != model.size()) throw std::invalid_argument("initial state length does not match model");
  SimState s;
  s.x = std::move(x0);
  s.cached_grads.resize(s.x.size());
  refresh_grads(s, model);
  return s;
}

std::vector<double> edge_flows(const SimState& state, const WeightedGraph& g, const Nonlinearity& nl) {
  check_sizes(state, g);
  std::vector<double> flows;
  compute_flows(state, g, nl, flows);
  return flows;
}

void step_discrete(SimState& state, const WeightedGraph& g, const CostModel& model, const StepParams& p) {
  check_sizes(state, g);
  thread_local std::vector<double> flows;
  compute_flows(state, g, p.nl, flows);
  apply_flows(state.x, g, flows, p.eta);
  ++state.step;
  refresh_grads(state, model);
  ensure_finite(state);
}

void step_continuous(SimState& state, const WeightedGraph& g, const CostModel& model, const StepParams& p) {
  check_sizes(state, g);
  if (!(p.h > 0.0)) throw std::invalid_argument("continuous mode needs h > 0");
  thread_local std::vector<double> flows, combo;
  if (p.mode == StepMode::ContinuousRk4) {
    // Classical 4-stage scheme. Stage flows are combined per edge and applied
    // once, so conservation does not depend on the stage arithmetic.
    SimState stage = state;
    compute_flows(state, g, p.nl, flows); // k1
    combo.assign(flows.begin(), flows.end());

    stage.x = state.x;
    apply_flows(stage.x, g, flows, 0.5 * p.h * p.eta);
    refresh_grads(stage, model);
    compute_flows(stage, g, p.nl, flows); // k2
    for (std::size_t e = 0; e < flows.size(); ++e) combo[e] += 2.0 * flows[e];

    stage.x = state.x;
    apply_flows(stage.x, g, flows, 0.5 * p.h * p.eta);
    refresh_grads(stage, model);
    compute_flows(stage, g, p.nl, flows); // k3
    for (std::size_t e = 0; e < flows.size(); ++e) combo[e] += 2.0 * flows[e];

    stage.x = state.x;
    apply_flows(stage.x, g, flows, p.h * p.eta);
    refresh_grads(stage, model);
    compute_flows(stage, g, p.nl, flows); // k4
    for (std::size_t e = 0; e < flows.size(); ++e) combo[e] += flows[e];

    apply_flows(state.x, g, combo, p.h * p.eta / 6.0);
  } else {
    compute_flows(state, g, p.nl, flows);
    apply_flows(state.x, g, flows, p.h * p.eta);
  }
  ++state.step;
  state.time += p.h;
  refresh_grads(state, model);
  ensure_finite(state);
}

void step(SimState& state, const WeightedGraph& g, const CostModel& model, const StepParams& p) {
  if (p.mode == StepMode::Discrete)
    step_discrete(state, g, model, p);
  else
    step_continuous(state, g, model, p);
}

SimState run(SimState state, const GraphSchedule& schedule, const CostModel& model, const StepParams& p,
             long steps, const Observer& observer) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (static_cast<int>(state.x.size()) != schedule.node_count())
    throw std::invalid_argument("state length does not match schedule");
  for (long k = 0; k < steps; ++k) {
    const double clock = p.mode == StepMode::Discrete ? static_cast<double>(state.step) : state.time;
    const std::size_t gi = schedule.index_at(clock);
    step(state, schedule.graph(gi), model, p);
    if (observer) observer(state, gi);
  }
  return state;
}

double gradient_dispersion(const SimState& state) {
  double lo = state.cached_grads.front(), hi = lo;
  for (const double gval : state.cached_grads) {
    lo = std::min(lo, gval);
    hi = std::max(hi, gval);
  }
  return hi - lo;
}

DissipationSides dissipation_sides(std::span<const double> phi, const WeightedGraph& g, double p) {
  if (static_cast<int>(phi.size()) != g.node_count())
    throw std::invalid_argument("phi length does not match graph");
  DissipationSides out;
  for (int i = 0; i < g.node_count(); ++i) {
    double inner = 0.0;
    for (const auto& [j, w] : g.neighbors(i)) inner += w * sgn_pow(phi[j] - phi[i], p);
    out.nodewise += phi[i] * inner;
  }
  for (const Edge& e : g.edges()) out.pairwise -= e.w * std::pow(std::fabs(phi[e.i] - phi[e.j]), p + 1.0);
  return out;
}

} // namespace sigalloc
