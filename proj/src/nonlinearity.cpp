#include "sigalloc/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sigalloc {

double sgn_pow(double u, double p) {
  if (!std::isfinite(u)) throw std::domain_error("sgn_pow: non-finite input");
  if (!std::isfinite(p) || p <= 0.0) throw std::domain_error("sgn_pow: exponent must be finite and > 0");
  if (u == 0.0) return 0.0; // limit of u|u|^{p-1} for p > 0
  if (p == 1.0) return u;
  // pow over |u| with the sign restored keeps eval(-u) == -eval(u) bitwise.
  return std::copysign(std::pow(std::fabs(u), p), u);
}

Nonlinearity Nonlinearity::composite(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("composite: alpha must be in (0, 1]");
  if (!(beta >= 1.0)) throw std::invalid_argument("composite: beta must be >= 1");
  return Nonlinearity(FlowKind::CompositeSignum, alpha, beta);
}

Nonlinearity Nonlinearity::linear() { return Nonlinearity(FlowKind::Linear, 0.0, 0.0); }

Nonlinearity Nonlinearity::finite_time(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("finite_time: nu must be in (0, 1)");
  return Nonlinearity(FlowKind::FiniteTime, nu, 0.0);
}

Nonlinearity Nonlinearity::saturated(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("saturated: delta must be > 0");
  return Nonlinearity(FlowKind::Saturated, delta, 0.0);
}

double Nonlinearity::eval(double u) const {
  switch (kind_) {
    case FlowKind::CompositeSignum: return sgn_pow(u, p1_) + sgn_pow(u, p2_);
    case FlowKind::Linear: return u;
    case FlowKind::FiniteTime: return sgn_pow(u, p1_);
    case FlowKind::Saturated: return std::clamp(u, -p1_, p1_);
  }
  return 0.0; // unreachable
}

std::string Nonlinearity::describe() const {
  char buf[64];
  switch (kind_) {
    case FlowKind::CompositeSignum:
      std::snprintf(buf, sizeof buf, "composite:%g:%g", p1_, p2_);
      return buf;
    case FlowKind::Linear: return "linear";
    case FlowKind::FiniteTime:
      std::snprintf(buf, sizeof buf, "finite_time:%g", p1_);
      return buf;
    case FlowKind::Saturated:
      std::snprintf(buf, sizeof buf, "saturated:%g", p1_);
      return buf;
  }
  return "";
}

double eval_flow(const Nonlinearity& nl, double u) { return nl.eval(u); }

} // namespace sigalloc
