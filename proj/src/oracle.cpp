#include "sigalloc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sigalloc {

double invert_gradient(const AgentCost& agent, double lambda,
                       double grad_tol) {
  if (!std::isfinite(lambda)) {
    throw std::invalid_argument("invert_gradient: lambda must be finite");
  }
  const double tol = grad_tol * (1.0 + std::fabs(lambda));

  // Penalty-free start; exact when the penalty term is absent.
  double x = (lambda - agent.quad.c_lin) / (2.0 * agent.quad.a);
  double g = agent_grad(agent, x);
  if (std::fabs(g - lambda) <= tol) return x;

  // Expand a bracket around x.  The marginal cost is strictly
  // increasing, so stepping against the sign of the residual is
  // guaranteed to straddle the root eventually.
  double span = std::max(1.0, std::fabs(x)) * 0.5;
  double lo = x, hi = x;
  double g_lo = g, g_hi = g;
  if (g > lambda) {
    for (int k = 0; k < 200 && g_lo > lambda; ++k) {
      lo -= span;
      span *= 2.0;
      g_lo = agent_grad(agent, lo);
    }
  } else {
    for (int k = 0; k < 200 && g_hi < lambda; ++k) {
      hi += span;
      span *= 2.0;
      g_hi = agent_grad(agent, hi);
    }
  }
  if (g_lo > lambda || g_hi < lambda) {
    throw std::runtime_error(
        "invert_gradient: could not bracket root; per-agent gradient is not "
        "strictly increasing");
  }

  // Bisect.  Width fallback stops the loop once the bracket is at the
  // resolution floor even if the gradient tolerance is unreachable.
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = agent_grad(agent, mid);
    if (std::fabs(g_mid - lambda) <= tol) return mid;
    if (g_mid < lambda) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= std::numeric_limits<double>::epsilon() *
                       (std::fabs(lo) + std::fabs(hi) + 1.0)) {
      break;
    }
  }
  return 0.5 * (lo + hi);
}

double invert_gradient(const CostModel& model, std::size_t i, double lambda,
                       double grad_tol) {
  return invert_gradient(model.agent(i), lambda, grad_tol);
}

OracleSolution solve(const CostModel& model, double demand,
                     const OracleOptions& options) {
  if (model.size() == 0) {
    throw std::invalid_argument("oracle: empty cost model");
  }
  if (!std::isfinite(demand)) {
    throw std::invalid_argument("oracle: demand must be finite");
  }
  const std::size_t n = model.size();
  const double feas_tol = options.feas_tol * (1.0 + std::fabs(demand));

  auto aggregate = [&](double lambda, std::vector<double>& x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = invert_gradient(model.agent(i), lambda, options.grad_tol);
      sum += x[i];
    }
    return sum;
  };

  std::vector<double> x(n);

  // Initial lambda bracket: evaluate every marginal cost at the even
  // demand share pushed 10x its own magnitude in both directions; the
  // min/max of those marginals straddle lambda* for any monotone model.
  // Geometric growth below covers the degenerate share = 0 case.
  const double share = demand / static_cast<double>(n);
  const double reach = 10.0 * std::max(1.0, std::fabs(share));
  double lam_lo = std::numeric_limits<double>::infinity();
  double lam_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    lam_lo = std::min(lam_lo, agent_grad(model.agent(i), share - reach));
    lam_hi = std::max(lam_hi, agent_grad(model.agent(i), share + reach));
  }

  double sum_lo = aggregate(lam_lo, x);
  double sum_hi = aggregate(lam_hi, x);
  double span = std::max(1.0, lam_hi - lam_lo);
  for (int k = 0; k < 200 && sum_lo > demand; ++k) {
    lam_lo -= span;
    span *= 2.0;
    sum_lo = aggregate(lam_lo, x);
  }
  span = std::max(1.0, lam_hi - lam_lo);
  for (int k = 0; k < 200 && sum_hi < demand; ++k) {
    lam_hi += span;
    span *= 2.0;
    sum_hi = aggregate(lam_hi, x);
  }
  if (sum_lo > demand || sum_hi < demand) {
    throw std::runtime_error(
        "oracle: could not bracket lambda; model gradient is not monotone");
  }

  // Bisect lambda all the way to the resolution floor rather than
  // stopping at feas_tol: the extra iterations are cheap and leave the
  // residual mass at rounding level instead of tolerance level.
  OracleSolution sol;
  sol.lambda_star = 0.5 * (lam_lo + lam_hi);
  double sum = aggregate(sol.lambda_star, x);
  std::size_t it = 0;
  while (it < options.max_iterations) {
    if (lam_hi - lam_lo <= std::numeric_limits<double>::epsilon() *
                               (std::fabs(lam_lo) + std::fabs(lam_hi) + 1.0)) {
      break;
    }
    ++it;
    if (sum < demand) {
      lam_lo = sol.lambda_star;
    } else {
      lam_hi = sol.lambda_star;
    }
    sol.lambda_star = 0.5 * (lam_lo + lam_hi);
    sum = aggregate(sol.lambda_star, x);
  }
  if (std::fabs(sum - demand) > feas_tol) {
    throw std::runtime_error(
        "oracle: bisection did not reach feasibility tolerance");
  }

  // Spread the rounding-level leftover proportionally to 1/(2a_i) -- the
  // exact first-order lambda correction for the quadratic part -- so the
  // reported allocation sums to the demand and the marginals stay equal.
  const double leftover = demand - sum;
  double slope = 0.0;
  for (std::size_t i = 0; i < n; ++i) slope += 0.5 / model.agent(i).quad.a;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] += leftover * (0.5 / model.agent(i).quad.a) / slope;
  }

  sol.x_star = x;
  sol.iterations = it;
  sol.f_star = model.total_cost(sol.x_star);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst,
                     std::fabs(model.eval_grad(i, x[i]) - sol.lambda_star));
  }
  sol.residual_kkt = worst;
  return sol;
}

}  // namespace sigalloc
