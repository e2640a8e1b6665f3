#pragma once

#include "sigalloc/cost_model.hpp"
#include "sigalloc/graph.hpp"
#include "sigalloc/nonlinearity.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sigalloc {

// State of one simulation run. cached_grads always matches x on exit from
// the stepping functions, so observers can read gradients without paying
// for a re-evaluation.
struct SimState {
  std::vector<double> x;
  long step = 0;
  double time = 0.0;
  std::vector<double> cached_grads;
};

SimState make_state(const CostModel& model, std::vector<double> x0);

enum class StepMode { Discrete, ContinuousEuler, ContinuousRk4 };

struct StepParams {
  double eta = 0.1;
  Nonlinearity nl = Nonlinearity::linear();
  StepMode mode = StepMode::Discrete;
  double h = 1e-3; // integrator step, continuous modes only
};

// Raised when a step produces a non-finite state entry.
struct IntegratorError : std::runtime_error {
  IntegratorError(long step, const std::string& what) : std::runtime_error(what), step(step) {}
  long step;
};

// Per-edge flow W_ij * phi(g_i - g_j), aligned with g.edges(). Uses the
// cached gradients, which must be consistent with state.x.
std::vector<double> edge_flows(const SimState& state, const WeightedGraph& g, const Nonlinearity& nl);

// One round of x_i <- x_i - eta*flow_ij, x_j <- x_j + eta*flow_ij over the
// stored edges. Applying each flow with opposite signs at its two endpoints
// keeps sum(x) constant up to additive rounding no matter how long the run.
void step_discrete(SimState& state, const WeightedGraph& g, const CostModel& model, const StepParams& p);

// Explicit fixed-step integration of xdot_i = -eta * sum_j W_ij phi(g_i-g_j):
// forward Euler or classical RK4, selected by p.mode. RK4 accumulates the
// stage combination per edge before the single antisymmetric apply, so it
// conserves sum(x) exactly like the Euler path.
void step_continuous(SimState& state, const WeightedGraph& g, const CostModel& model, const StepParams& p);

// Dispatches on p.mode.
void step(SimState& state, const WeightedGraph& g, const CostModel& model, const StepParams& p);

// Called after every step with the updated state and the id of the graph the
// step used. Must not mutate the state.
using Observer = std::function<void(const SimState&, std::size_t active_graph)>;

// Runs `steps` rounds, picking the active graph from the schedule each round
// (clock = step index in discrete mode, simulated time in continuous mode).
// Aborts with IntegratorError if the state leaves the finite range.
SimState run(SimState state, const GraphSchedule& schedule, const CostModel& model, const StepParams& p,
             long steps, const Observer& observer = {});

// max_i g_i - min_i g_i; zero exactly when the gradients sit in span(1).
double gradient_dispersion(const SimState& state);

// Both sides of the dissipation identity
//   sum_i phi_i sum_j W_ij sgn_pow(phi_j - phi_i, p)
//     = -1/2 sum_{i,j} W_ij |phi_i - phi_j|^{p+1},
// computed by two independent routes: the nodewise side loops over the
// realized adjacency, the pairwise side over the stored edge list. Each is
// the other's oracle in the property tests.
struct DissipationSides {
  double nodewise = 0.0;
  double pairwise = 0.0;
};

DissipationSides dissipation_sides(std::span<const double> phi, const WeightedGraph& g, double p);

} // namespace sigalloc
