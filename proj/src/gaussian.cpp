#include "eprwmr/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eprwmr {

SqueezeParams::SqueezeParams(double r_in) {
  if (!std::isfinite(r_in) || r_in < 0.0 || r_in > kMaxSqueeze) {
    throw std::domain_error("squeeze parameter r must lie in [0, " +
                            std::to_string(kMaxSqueeze) +
                            "], got r = " + std::to_string(r_in));
  }
  r = r_in;
  eta = std::tanh(r_in);
  g0 = std::tanh(2.0 * r_in);
  sigma_sq = 0.5 * std::cosh(2.0 * r_in);
}

Gaussian1D::Gaussian1D(double mean_in, double variance_in)
    : mean(mean_in), variance(variance_in) {
  if (!std::isfinite(mean) || !std::isfinite(variance) || variance <= 0.0) {
    throw std::invalid_argument("Gaussian1D requires finite mean and variance > 0");
  }
}

double Gaussian1D::pdf(double x) const {
  const double z = (x - mean);
  return std::exp(-0.5 * z * z / variance) /
         std::sqrt(2.0 * std::numbers::pi * variance);
}

double Gaussian1D::sample(RngStream& s) const {
  return mean + std::sqrt(variance) * s.normal();
}

Gaussian2D::Gaussian2D(std::array<double, 2> mean_in,
                       std::array<std::array<double, 2>, 2> cov_in)
    : mean(mean_in), cov(cov_in) {
  const double asym = std::abs(cov[0][1] - cov[1][0]);
  const double det = cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
  if (asym > 1e-12 * (std::abs(cov[0][1]) + 1.0) || cov[0][0] <= 0.0 ||
      cov[1][1] <= 0.0 || det <= 0.0) {
    throw std::invalid_argument(
        "Gaussian2D requires a symmetric positive-definite covariance");
  }
}

double Gaussian2D::pdf(double x, double y) const {
  const double dx = x - mean[0];
  const double dy = y - mean[1];
  const double det = cov[0][0] * cov[1][1] - cov[0][1] * cov[1][0];
  const double q = (cov[1][1] * dx * dx - 2.0 * cov[0][1] * dx * dy +
                    cov[0][0] * dy * dy) / det;
  return std::exp(-0.5 * q) / (2.0 * std::numbers::pi * std::sqrt(det));
}

Gaussian1D Gaussian2D::marginal(int i) const {
  if (i != 0 && i != 1) throw std::invalid_argument("marginal index must be 0 or 1");
  return {mean[i], cov[i][i]};
}

Gaussian1D Gaussian2D::conditional(int i, double value) const {
  if (i != 0 && i != 1) throw std::invalid_argument("conditional index must be 0 or 1");
  const int j = 1 - i;
  const double k = cov[i][j] / cov[j][j];
  return {mean[i] + k * (value - mean[j]), cov[i][i] - k * cov[i][j]};
}

std::pair<double, double> Gaussian2D::sample(RngStream& s) const {
  // Cholesky factor of the 2x2 covariance.
  const double l00 = std::sqrt(cov[0][0]);
  const double l10 = cov[1][0] / l00;
  const double l11 = std::sqrt(cov[1][1] - l10 * l10);
  const double z0 = s.normal();
  const double z1 = s.normal();
  return {mean[0] + l00 * z0, mean[1] + l10 * z0 + l11 * z1};
}

double quadrature_variance(const SqueezeParams& p) { return p.sigma_sq; }

double inference_variance_optimal(const SqueezeParams& p) {
  return 0.25 / p.sigma_sq;
}

std::pair<double, double> inference_variance_general(const SqueezeParams& p,
                                                     double g) {
  if (!std::isfinite(g)) throw std::invalid_argument("inference gain must be finite");
  const double c = std::cosh(2.0 * p.r);
  const double s = std::sinh(2.0 * p.r);
  const double v = 0.5 * (c * (1.0 + g * g) - 2.0 * g * s);
  return {v, v};
}

Gaussian1D conditional_distribution_x(const SqueezeParams& p, double x_b) {
  return {p.g0 * x_b, inference_variance_optimal(p)};
}

Gaussian1D conditional_distribution_p(const SqueezeParams& p, double p_b) {
  return {-p.g0 * p_b, inference_variance_optimal(p)};
}

Gaussian2D joint_distribution_x(const SqueezeParams& p) {
  const double c = p.sigma_sq;
  const double s = 0.5 * std::sinh(2.0 * p.r);
  return {{0.0, 0.0}, {{{c, s}, {s, c}}}};
}

Gaussian2D joint_distribution_p(const SqueezeParams& p) {
  const double c = p.sigma_sq;
  const double s = -0.5 * std::sinh(2.0 * p.r);
  return {{0.0, 0.0}, {{{c, s}, {s, c}}}};
}

double mean_photon_number(const SqueezeParams& p) {
  const double sh = std::sinh(p.r);
  return sh * sh;
}

CriterionVerdict epr_criterion(double dinf_x, double dinf_p) {
  if (!(dinf_x >= 0.0) || !(dinf_p >= 0.0)) {
    throw std::domain_error("epr_criterion needs nonnegative inference deviations");
  }
  const double product = dinf_x * dinf_p;
  return {product, product < 0.5};
}

}  // namespace eprwmr
