#include "eprwmr/schrodinger.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eprwmr {

double relative_error(const SqueezeParams& p, double p_b) {
  if (!std::isfinite(p_b)) throw std::invalid_argument("p_b must be finite");
  const double estimate = p.g0 * p_b;
  if (estimate == 0.0) {
    throw std::domain_error(
        "estimate undefined: g0*p_b = 0, the relative error of the P_A^2 "
        "prediction diverges (p_b = 0 or r = 0)");
  }
  return std::sqrt(inference_variance_optimal(p)) / std::abs(estimate);
}

double absolute_error_xi(const SqueezeParams& p, double p_b) {
  if (!std::isfinite(p_b)) throw std::invalid_argument("p_b must be finite");
  const double c = std::cosh(2.0 * p.r);
  return std::numbers::sqrt2 / std::sqrt(c) * p.g0 * std::abs(p_b);
}

ErrorBudget error_budget(const SqueezeParams& p, double p_b) {
  return {p_b, p.g0 * p_b, relative_error(p, p_b), absolute_error_xi(p, p_b)};
}

double halfgauss_mean_abs(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("halfgauss_mean_abs requires sigma > 0");
  }
  return sigma * std::sqrt(2.0 / std::numbers::pi);
}

HomodyneSumCheck homodyne_sum_check(const SqueezeParams& p, double e_scale) {
  if (!(e_scale > 0.0) || !std::isfinite(e_scale)) {
    throw std::invalid_argument("homodyne_sum_check requires E > 0");
  }
  const double c = std::cosh(2.0 * p.r);
  const double e2 = e_scale * e_scale;
  return {e2 * (c - 0.5 / c), e2 * c};
}

Gaussian1D p_squared_residual_moments(const SqueezeParams& p, double g) {
  if (!std::isfinite(g)) throw std::invalid_argument("gain must be finite");
  const double ch = std::cosh(p.r), sh = std::sinh(p.r);
  const double c1 = ch * ch - g * g * sh * sh;
  const double c2 = sh * sh - g * g * ch * ch;
  // For vacuum P ~ N(0, 1/2): E[P^2] = 1/2 and, via Isserlis
  // (E[P^4] = 3 E[P^2]^2 = 3/4), Var(P^2) = 3/4 - 1/4 = 1/2. The two inputs
  // are independent, so mean = (c1 - c2)/2 and variance = (c1^2 + c2^2)/2.
  return {0.5 * (c1 - c2), 0.5 * (c1 * c1 + c2 * c2)};
}

}  // namespace eprwmr
