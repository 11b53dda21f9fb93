#pragma once

#include "eprwmr/gaussian.hpp"

namespace eprwmr {

/// Error budget for estimating X_A² + P_A² from a remote P_B outcome:
/// P_A is predicted as −g0·p_b, so the estimate of P_A² carries the
/// inference error quantified below.
struct ErrorBudget {
  double p_b;                // measured outcome at B
  double p_estimate;         // g0 · p_b (signed best estimate magnitude source)
  double relative_error;     // Δ_inf P_A / |p_estimate|
  double absolute_error_xi;  // additive error on P_A² in vacuum units
};

/// Δ_inf P_A / |g0·p_b|. Throws std::domain_error when the estimate g0·p_b
/// vanishes (p_b = 0, or r = 0 where the optimal gain is zero).
double relative_error(const SqueezeParams& p, double p_b);

/// ξ = (√2/√cosh2r) · tanh2r · |p_b| — error on P_A² relative to the
/// vacuum level; stays of order one at large r.
double absolute_error_xi(const SqueezeParams& p, double p_b);

ErrorBudget error_budget(const SqueezeParams& p, double p_b);

/// E|Z| for Z ~ N(0, sigma²): sigma·√(2/π).
double halfgauss_mean_abs(double sigma);

/// Consistency of the scaled homodyne sum ⟨X_A² + g0²·P_B²⟩ against the
/// direct total cosh2r = 1 + 2·n̄; the gap E²/(2cosh2r) is the optimal
/// inference variance and vanishes relative to rhs at large r.
struct HomodyneSumCheck {
  double lhs;
  double rhs;
  double gap() const { return rhs - lhs; }
  double relative_gap() const { return gap() / rhs; }
};
HomodyneSumCheck homodyne_sum_check(const SqueezeParams& p, double e_scale);

/// First two moments of c1·P_A(0)² − c2·P_B(0)² for independent vacuum
/// inputs, with c1 = cosh²r − g²sinh²r and c2 = sinh²r − g²cosh²r, returned
/// as a Gaussian1D record (mean, variance).
Gaussian1D p_squared_residual_moments(const SqueezeParams& p, double g);

}  // namespace eprwmr
