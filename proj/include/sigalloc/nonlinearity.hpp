#pragma once

#include <string>

namespace sigalloc {

// Signed power u|u|^{p-1}. Odd and sign-preserving; amplifies inputs below 1
// in magnitude when p < 1 and above 1 when p > 1. Exactly 0 at u = 0.
// Throws std::domain_error for non-finite u or p <= 0.
double sgn_pow(double u, double p);

enum class FlowKind { CompositeSignum, Linear, FiniteTime, Saturated };

// Scalar edge nonlinearity applied to gradient differences. Every kind is
// odd (bit-symmetric: eval(-u) == -eval(u)) and sign-preserving.
class Nonlinearity {
public:
  // Signed-power pair sgn_pow(u, alpha) + sgn_pow(u, beta).
  // Requires 0 < alpha <= 1 and beta >= 1; the boundary alpha = beta = 1
  // degenerates to exactly twice the linear flow and is allowed so that
  // parameter grids can include the linear corner.
  static Nonlinearity composite(double alpha, double beta);
  static Nonlinearity linear();
  // Single signed-power term sgn_pow(u, nu), 0 < nu < 1.
  static Nonlinearity finite_time(double nu);
  // Hard clamp of u to [-delta, delta], delta > 0.
  static Nonlinearity saturated(double delta);

  double eval(double u) const;
  double operator()(double u) const { return eval(u); }

  FlowKind kind() const { return kind_; }
  double alpha() const { return p1_; }
  double beta() const { return p2_; }
  double nu() const { return p1_; }
  double delta() const { return p1_; }

  // Canonical spec string, e.g. "composite:0.3:1.7".
  std::string describe() const;

private:
  Nonlinearity(FlowKind kind, double p1, double p2) : kind_(kind), p1_(p1), p2_(p2) {}
  FlowKind kind_;
  double p1_;
  double p2_;
};

double eval_flow(const Nonlinearity& nl, double u);

} // namespace sigalloc
