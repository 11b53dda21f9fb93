#include "eprwmr/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eprwmr {
namespace {

void require_finite(const PhasePoint& pt) {
  if (!std::isfinite(pt.x_a) || !std::isfinite(pt.p_a) ||
      !std::isfinite(pt.x_b) || !std::isfinite(pt.p_b)) {
    throw std::invalid_argument("phase-space point must be finite");
  }
}

}  // namespace

double q_density(const PhasePoint& pt, const SqueezeParams& p) {
  require_finite(pt);
  const double eta = p.eta;
  const double norm = (1.0 - eta * eta) / (4.0 * std::numbers::pi * std::numbers::pi);
  const double xm = pt.x_a - pt.x_b, xp = pt.x_a + pt.x_b;
  const double pm = pt.p_a - pt.p_b, pp = pt.p_a + pt.p_b;
  const double expo = -0.25 * ((xm * xm + pp * pp) * (1.0 + eta) +
                               (xp * xp + pm * pm) * (1.0 - eta));
  return norm * std::exp(expo);
}

SectorGaussian q_sector_variances(const SqueezeParams& p, double gT,
                                  Sector sector) {
  if (!(gT >= 0.0) || !std::isfinite(gT)) {
    throw std::invalid_argument("gT must be >= 0");
  }
  const double amp = std::exp(2.0 * gT);
  const double squeezed = 1.0 + amp * std::exp(-2.0 * p.r);
  const double antisqueezed = 1.0 + amp * std::exp(2.0 * p.r);
  // x sector: x_- carries the squeezed excess; p sector mirrors with
  // p_± replacing x_∓, so there the sum combination is the squeezed one.
  if (sector == Sector::x) return {antisqueezed, squeezed, sector};
  return {squeezed, antisqueezed, sector};
}

SectorGaussian q_sector_variances(const SqueezeParams& p, double gT) {
  return q_sector_variances(p, gT, Sector::x);
}

std::vector<std::pair<double, double>> sample_q(const SqueezeParams& p,
                                                double gT, Sector sector,
                                                int n, RngStream& stream) {
  if (n < 1) throw std::invalid_argument("sample_q requires n >= 1");
  const SectorGaussian sg = q_sector_variances(p, gT, sector);
  const double s_sum = std::sqrt(sg.variance_sum);
  const double s_diff = std::sqrt(sg.variance_diff);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u_sum = s_sum * stream.normal();
    const double u_diff = s_diff * stream.normal();
    out.emplace_back(u_sum, u_diff);
  }
  return out;
}

double wigner_density(const PhasePoint& pt, const SqueezeParams& p) {
  require_finite(pt);
  const double ep = std::exp(2.0 * p.r), em = std::exp(-2.0 * p.r);
  const double xm = pt.x_a - pt.x_b, xp = pt.x_a + pt.x_b;
  const double pm = pt.p_a - pt.p_b, pp = pt.p_a + pt.p_b;
  const double expo = -0.5 * ep * (xm * xm + pp * pp) -
                      0.5 * em * (xp * xp + pm * pm);
  return std::exp(expo) / (std::numbers::pi * std::numbers::pi);
}

Gaussian2D wigner_marginal_xA_pB(const SqueezeParams& p) {
  const double v = p.sigma_sq;
  return {{0.0, 0.0}, {{{v, 0.0}, {0.0, v}}}};
}

}  // namespace eprwmr
