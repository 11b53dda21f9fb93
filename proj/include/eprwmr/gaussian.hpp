#pragma once

#include <array>
#include <utility>

#include "eprwmr/rng.hpp"

namespace eprwmr {

// Quadrature convention throughout: X = (a + a†)/√2, P = (a − a†)/(i√2),
// vacuum variance 1/2. Lowercase x/p is used for phase-space (sampled)
// amplitudes of the same observables.

/// Vacuum variance of a single quadrature.
inline constexpr double kVacuumVariance = 0.5;

/// Largest accepted squeeze parameter; cosh/sinh terms stay comfortably
/// inside double range and every formula here is exact well before this.
inline constexpr double kMaxSqueeze = 12.0;

/// Two-mode squeezing parameter bundle. eta = tanh r is the Schmidt-basis
/// ratio, g0 = tanh 2r the optimal inference gain, sigma_sq = cosh(2r)/2 the
/// single-quadrature variance.
struct SqueezeParams {
  double r;
  double eta;
  double g0;
  double sigma_sq;

  explicit SqueezeParams(double r_in);
};

struct Gaussian1D {
  double mean;
  double variance;

  Gaussian1D(double mean_in, double variance_in);

  double pdf(double x) const;
  double sample(RngStream& s) const;
};

/// Bivariate normal; covariance must be symmetric positive definite.
struct Gaussian2D {
  std::array<double, 2> mean;
  std::array<std::array<double, 2>, 2> cov;

  Gaussian2D(std::array<double, 2> mean_in,
             std::array<std::array<double, 2>, 2> cov_in);

  double pdf(double x, double y) const;
  Gaussian1D marginal(int i) const;
  /// Distribution of component i given the other component equals `value`.
  Gaussian1D conditional(int i, double value) const;
  std::pair<double, double> sample(RngStream& s) const;
};

/// Var X_A = Var P_A = cosh(2r)/2.
double quadrature_variance(const SqueezeParams& p);

/// Minimum inference variance 1/(2 cosh 2r), attained at gain g0 = tanh 2r.
double inference_variance_optimal(const SqueezeParams& p);

/// (Var[X_A − g·X_B], Var[P_A + g·P_B]) at arbitrary gain g; the two
/// components are equal by symmetry.
std::pair<double, double> inference_variance_general(const SqueezeParams& p,
                                                     double g);

/// X_A | X_B = x_b  ~  N(g0·x_b, 1/(2 cosh 2r)).
Gaussian1D conditional_distribution_x(const SqueezeParams& p, double x_b);
/// P_A | P_B = p_b  ~  N(−g0·p_b, 1/(2 cosh 2r)).
Gaussian1D conditional_distribution_p(const SqueezeParams& p, double p_b);

Gaussian2D joint_distribution_x(const SqueezeParams& p);
Gaussian2D joint_distribution_p(const SqueezeParams& p);

/// Mean photon number per mode, sinh² r.
double mean_photon_number(const SqueezeParams& p);

struct CriterionVerdict {
  double product;
  bool satisfied;  // strict: product < 1/2
};

/// EPR/steering product test on the two inference standard deviations.
CriterionVerdict epr_criterion(double dinf_x, double dinf_p);

}  // namespace eprwmr
