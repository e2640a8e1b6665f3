#pragma once

#include <cstddef>
#include <vector>

#include "sigalloc/cost_model.hpp"

namespace sigalloc {

// Centralized reference solver for the equality-constrained allocation
// problem: minimize sum_i f_i(x_i) subject to sum_i x_i = demand.
//
// Each f_i is strictly convex and differentiable, so the optimum is the
// unique point where every marginal cost equals a common multiplier
// lambda*.  The solver never looks at a graph or a trajectory; it works
// directly on the cost model, which makes it a genuinely independent
// check on the distributed dynamics.

struct OracleOptions {
  double feas_tol = 1e-9;    // relative tolerance on |sum x - demand|
  double grad_tol = 1e-12;   // relative tolerance on |f_i'(x_i) - lambda|
  std::size_t max_iterations = 400;  // cap on outer bisection steps
};

struct OracleSolution {
  std::vector<double> x_star;
  double lambda_star = 0.0;
  double f_star = 0.0;
  std::size_t iterations = 0;   // outer bisection steps used
  double residual_kkt = 0.0;    // max_i |f_i'(x_i) - lambda_star|
};

// Solves f_i'(x) = lambda for the single agent `agent`.  The marginal
// cost is strictly increasing (a_i > 0 and convex penalties), so the
// root is unique.  Starts from the penalty-free solution
// (lambda - c_lin) / (2a) and expands a bracket geometrically before
// bisecting.
double invert_gradient(const AgentCost& agent, double lambda,
                       double grad_tol = 1e-12);
double invert_gradient(const CostModel& model, std::size_t i, double lambda,
                       double grad_tol = 1e-12);

// Full solve: outer bisection on lambda until the aggregate response
// sum_i x_i(lambda) meets the demand.  Throws std::runtime_error if the
// iteration cap is hit before the feasibility tolerance is reached.
OracleSolution solve(const CostModel& model, double demand,
                     const OracleOptions& options = {});

}  // namespace sigalloc
