#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sigalloc {

// Strictly convex quadratic a*x^2 + c_lin*x. The linear coefficient is named
// c_lin because b is the total demand elsewhere in the library.
struct QuadraticCost {
  double a = 1.0;
  double c_lin = 0.0;
};

enum class PenaltyKind { None, Power, LogSmooth };

// Convex box-constraint penalty added to the quadratic cost:
//   Power:     sigma*max(x-upper,0)^c + sigma*max(lower-x,0)^c, integer c >= 2
//   LogSmooth: (sigma/rho)*[softplus(rho*(x-upper)) + softplus(rho*(lower-x))]
// LogSmooth approaches sigma*max(u,0) from above as rho grows; the gap is
// largest at the bound itself, where it equals sigma*ln(2)/rho.
struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::None;
  double sigma = 0.0;
  double rho = 1.0; // LogSmooth sharpness
  int c = 2;        // Power exponent
  double lower = 0.0;
  double upper = 0.0;

  static PenaltySpec none();
  static PenaltySpec power(int c, double sigma, double lower, double upper);
  static PenaltySpec log_smooth(double rho, double sigma, double lower, double upper);
};

struct AgentCost {
  QuadraticCost quad;
  PenaltySpec penalty;
};

// Stand-alone evaluation of one agent's cost and marginal cost. These do not
// validate; CostModel does that once at construction.
double agent_cost(const AgentCost& agent, double x);
double agent_grad(const AgentCost& agent, double x);

// Immutable per-agent cost table. Each total per-agent cost is strictly
// convex with a strictly increasing derivative; evaluation is reentrant.
class CostModel {
public:
  explicit CostModel(std::vector<AgentCost> agents);

  std::size_t size() const { return agents_.size(); }
  const AgentCost& agent(std::size_t i) const;

  double eval_cost(std::size_t i, double x) const;
  double eval_grad(std::size_t i, double x) const;
  double total_cost(std::span<const double> x) const;

private:
  std::vector<AgentCost> agents_;
};

// Upper bound on the Lipschitz constant of the gradient: 2*max(a_i) plus the
// penalty curvature bound (sigma*rho/4 per bound for LogSmooth, 2*sigma per
// bound for Power with c = 2; exponents above 2 have unbounded curvature and
// contribute only their quadratic part).
double lipschitz_bound(const CostModel& model);

} // namespace sigalloc
