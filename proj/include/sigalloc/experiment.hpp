#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigalloc/cost_model.hpp"
#include "sigalloc/dynamics.hpp"
#include "sigalloc/graph.hpp"
#include "sigalloc/nonlinearity.hpp"
#include "sigalloc/oracle.hpp"

namespace sigalloc {

// One trajectory to simulate: a labeled nonlinearity with its gains. Every
// method in an experiment shares the model, schedule, and initial state, so
// curves are directly comparable.
struct MethodSpec {
  std::string label;
  Nonlinearity nl = Nonlinearity::linear();
  double eta = 0.1;
  StepMode mode = StepMode::ContinuousEuler;
};

// Coefficient ranges for the randomly drawn per-agent costs. Draws are from
// the half-open interval (lo, hi] so a_lo = 0 still yields strictly positive
// curvature.
struct CostRanges {
  double a_lo = 0.0;
  double a_hi = 0.3;
  double c_lin_lo = 0.0;
  double c_lin_hi = 10.0;
  PenaltySpec penalty = PenaltySpec::none();
};

// Random graph layer. count = 1 builds one static connected snapshot;
// count > 1 builds a round-robin schedule. split_components additionally
// forces every snapshot to be disconnected (two ER halves with no cross
// links) while the schedule union must still be connected -- the switching
// regime the dynamics are supposed to survive.
struct GraphSpec {
  double p = 0.2;
  WeightKind weights = WeightKind::Unit;
  std::size_t count = 1;
  double dwell = 1.0; // seconds (continuous) or steps (discrete) per snapshot
  bool split_components = false;
};

struct ExperimentConfig {
  std::size_t n = 50;
  double demand = 3000.0;
  std::uint64_t master_seed = 1;
  long steps = 100000;
  StepMode mode = StepMode::ContinuousEuler;
  double h = 1e-3;
  long record_every = 0; // 0 = auto decimation (each step to 1e4, then every 10th)
  CostRanges cost;
  GraphSpec graph;
  std::vector<MethodSpec> methods;
  OracleOptions oracle;
  std::string output_name; // subdirectory under the output root; empty = timestamped
};

// Throws std::invalid_argument naming the offending field.
void validate_config(const ExperimentConfig& cfg);

struct MetricsRecord {
  long step = 0;
  double time = 0.0;       // simulated seconds (continuous) or step index (discrete)
  double residual = 0.0;   // F(x) - F*
  double feasibility_gap = 0.0;
  double dispersion = 0.0; // max - min gradient
};

struct MethodSeries {
  std::string label;
  std::vector<MetricsRecord> records;
  std::vector<double> final_x;
  bool converged = false;     // dispersion < 1e-8 for 100 consecutive steps
  long converged_step = 0;
  bool eta_warning = false;   // eta exceeds 1/L for the drawn model
  bool aborted = false;       // integrator abort; records hold the prefix
  std::string abort_message;
};

// Everything the methods share, drawn deterministically from the master
// seed: stream 0 -> costs, stream 1 -> initial state, streams 2+ -> graphs.
struct Scenario {
  CostModel model;
  GraphSchedule schedule;
  std::vector<double> x0;
  OracleSolution oracle;
};

// Uniform draws on [0, 2*demand/n) shifted to sum exactly to the demand
// (up to rounding). Deterministic in the seed.
std::vector<double> make_feasible_initial(std::size_t n, double demand, std::uint64_t seed);

// Draws the cost model, graph schedule, and initial state, then solves the
// oracle. Graph draws retry with bumped sub-seeds until the connectivity
// requirement holds (static snapshot connected; switching union connected
// and, under split_components, every snapshot disconnected).
Scenario build_scenario(const ExperimentConfig& cfg);

struct ExperimentResult {
  std::vector<MethodSeries> series; // one per cfg.methods, same order
  OracleSolution oracle;
  double lipschitz = 0.0; // gradient Lipschitz bound of the drawn model
};

// Builds the scenario and runs every method from the same initial state on
// the same schedule. Methods run concurrently; each series is recorded
// independently so the result is deterministic anyway. Integrator aborts are
// captured per method (aborted/abort_message) rather than thrown, so the
// caller can flush partial results; oracle and configuration errors throw.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Variant reusing an existing scenario (sweeps run many method sets against
// one drawn world).
ExperimentResult run_experiment(const ExperimentConfig& cfg, const Scenario& scenario);

} // namespace sigalloc
