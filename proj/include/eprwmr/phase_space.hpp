#pragma once

#include <utility>
#include <vector>

#include "eprwmr/gaussian.hpp"
#include "eprwmr/rng.hpp"

namespace eprwmr {

struct PhasePoint {
  double x_a;
  double p_a;
  double x_b;
  double p_b;
};

enum class Sector { x, p };

/// Gaussian statistics of one (u_A ± u_B) sector of the amplified Q
/// function: σ²(t) = 1 + e^{2gT}·e^{±2r}, squeezed combination carrying the
/// e^{−2r} excess.
struct SectorGaussian {
  double variance_sum;   // Var(u_A + u_B)
  double variance_diff;  // Var(u_A - u_B)
  Sector sector;
};

/// Husimi Q density of the two-mode squeezed state at a phase-space point.
/// Canonical (x, p) form with normalization (1−η²)/(4π²); expressed in the
/// (a, a†) eigenvalue pair the same density carries prefactor 1/π² — the
/// factor 4 is the Jacobian of α = (x + ip)/√2 per mode.
double q_density(const PhasePoint& pt, const SqueezeParams& p);

/// Sector variances of the amplified Q function after gain exp(gT): x sector
/// has Var(x_−) squeezed, the p sector mirrors with p_± replacing x_∓.
SectorGaussian q_sector_variances(const SqueezeParams& p, double gT);
SectorGaussian q_sector_variances(const SqueezeParams& p, double gT,
                                  Sector sector);

/// n iid draws of (u_+, u_−) from the sector Gaussian at gain exp(gT).
std::vector<std::pair<double, double>> sample_q(const SqueezeParams& p,
                                                double gT, Sector sector,
                                                int n, RngStream& stream);

/// Wigner (symmetric-ordering) density of the two-mode squeezed state.
double wigner_density(const PhasePoint& pt, const SqueezeParams& p);

/// Joint Wigner marginal of (x_A, p_B): independent zero-mean Gaussians of
/// variance cosh(2r)/2 each.
Gaussian2D wigner_marginal_xA_pB(const SqueezeParams& p);

}  // namespace eprwmr
