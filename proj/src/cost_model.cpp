#include "sigalloc/cost_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sigalloc {
namespace {

// log(1 + exp(z)) without overflow for large |z|.
double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

// 1 / (1 + exp(-z)) without overflow for large |z|.
double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void validate(const AgentCost& ac, std::size_t i) {
  const auto fail = [i](const char* msg) {
    throw std::invalid_argument("agent " + std::to_string(i) + ": " + msg);
  };
  if (!(ac.quad.a > 0.0)) fail("quadratic coefficient must be > 0");
  if (!std::isfinite(ac.quad.a) || !std::isfinite(ac.quad.c_lin)) fail("non-finite cost coefficient");
  const PenaltySpec& p = ac.penalty;
  if (p.kind == PenaltyKind::None) return;
  if (!(p.lower < p.upper)) fail("penalty bounds must satisfy lower < upper");
  if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma)) fail("penalty weight must be >= 0");
  if (p.kind == PenaltyKind::Power && p.c < 2) fail("power penalty needs exponent >= 2");
  if (p.kind == PenaltyKind::LogSmooth && !(p.rho > 0.0)) fail("log-smooth penalty needs rho > 0");
}

double penalty_value(const PenaltySpec& p, double x) {
  switch (p.kind) {
    case PenaltyKind::None:
      return 0.0;
    case PenaltyKind::Power: {
      const double hi = std::max(x - p.upper, 0.0);
      const double lo = std::max(p.lower - x, 0.0);
      return p.sigma * (std::pow(hi, p.c) + std::pow(lo, p.c));
    }
    case PenaltyKind::LogSmooth:
      return p.sigma / p.rho * (softplus(p.rho * (x - p.upper)) + softplus(p.rho * (p.lower - x)));
  }
  return 0.0;
}

double penalty_grad(const PenaltySpec& p, double x) {
  switch (p.kind) {
    case PenaltyKind::None:
      return 0.0;
    case PenaltyKind::Power: {
      const double hi = std::max(x - p.upper, 0.0);
      const double lo = std::max(p.lower - x, 0.0);
      return p.sigma * p.c * (std::pow(hi, p.c - 1) - std::pow(lo, p.c - 1));
    }
    case PenaltyKind::LogSmooth:
      return p.sigma * (logistic(p.rho * (x - p.upper)) - logistic(p.rho * (p.lower - x)));
  }
  return 0.0;
}

} // namespace

PenaltySpec PenaltySpec::none() { return PenaltySpec{}; }

PenaltySpec PenaltySpec::power(int c, double sigma, double lower, double upper) {
  return PenaltySpec{PenaltyKind::Power, sigma, 1.0, c, lower, upper};
}

PenaltySpec PenaltySpec::log_smooth(double rho, double sigma, double lower, double upper) {
  return PenaltySpec{PenaltyKind::LogSmooth, sigma, rho, 2, lower, upper};
}

double agent_cost(const AgentCost& agent, double x) {
  return agent.quad.a * x * x + agent.quad.c_lin * x + penalty_value(agent.penalty, x);
}

double agent_grad(const AgentCost& agent, double x) {
  return 2.0 * agent.quad.a * x + agent.quad.c_lin + penalty_grad(agent.penalty, x);
}

CostModel::CostModel(std::vector<AgentCost> agents) : agents_(std::move(agents)) {
  if (agents_.empty()) throw std::invalid_argument("cost model needs at least one agent");
  for (std::size_t i = 0; i < agents_.size(); ++i) validate(agents_[i], i);
}

const AgentCost& CostModel::agent(std::size_t i) const {
  if (i >= agents_.size()) throw std::out_of_range("agent index out of range");
  return agents_[i];
}

double CostModel::eval_cost(std::size_t i, double x) const {
  return agent_cost(agent(i), x);
}

double CostModel::eval_grad(std::size_t i, double x) const {
  return agent_grad(agent(i), x);
}

double CostModel::total_cost(std::span<const double> x) const {
  if (x.size() != agents_.size()) throw std::invalid_argument("state length does not match agent count");
  // Neumaier-compensated sum: the total feeds per-step monotonicity checks
  // whose tolerance is tighter than naive n-term rounding.
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double term = eval_cost(i, x[i]);
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double lipschitz_bound(const CostModel& model) {
  double worst = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const AgentCost& ac = model.agent(i);
    double li = 2.0 * ac.quad.a;
    if (ac.penalty.kind == PenaltyKind::LogSmooth)
      li += 2.0 * ac.penalty.sigma * ac.penalty.rho / 4.0;
    else if (ac.penalty.kind == PenaltyKind::Power && ac.penalty.c == 2)
      li += 2.0 * 2.0 * ac.penalty.sigma;
    worst = std::max(worst, li);
  }
  return worst;
}

} // namespace sigalloc
