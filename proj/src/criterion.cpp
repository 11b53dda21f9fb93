#include "eprwmr/criterion.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace eprwmr {
namespace {

inline double std_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

BinningScheme::BinningScheme(double Delta, double delta, double x1, double G)
    : bin_width_Delta(Delta), overlap_delta(delta), threshold_x1(x1), gain_G(G) {
  if (!(Delta > 0.0)) throw std::invalid_argument("bin width Delta must be > 0");
  if (!(delta >= 0.0)) throw std::invalid_argument("overlap delta must be >= 0");
  if (!(delta < Delta)) throw std::invalid_argument("overlap delta must be < Delta");
  if (!(x1 >= 0.0)) throw std::invalid_argument("threshold x1 must be >= 0");
  if (!(G >= 1.0)) throw std::invalid_argument("gain G must be >= 1");
}

const char* to_string(MethodTag tag) {
  switch (tag) {
    case MethodTag::two_region: return "two_region";
    case MethodTag::binned_amplified: return "binned_amplified";
    case MethodTag::conditional_mc: return "conditional_mc";
  }
  return "unknown";
}

RegionProbabilities region_probabilities(const SqueezeParams& p, double x1) {
  if (!(x1 >= 0.0) || !std::isfinite(x1)) {
    throw std::domain_error("region threshold x1 must be >= 0");
  }
  const double sigma = std::sqrt(p.sigma_sq);
  const double p_plus = 0.5 * std::erfc(x1 / (std::numbers::sqrt2 * sigma));
  const double p_zero = std::max(0.0, 1.0 - 2.0 * p_plus);
  return {p_plus, p_zero, p_plus};
}

double half_gaussian_variance(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("half_gaussian_variance requires sigma > 0");
  }
  return sigma * sigma * (1.0 - 2.0 / std::numbers::pi);
}

double upper_tail_first_moment(const SqueezeParams& p, double x1) {
  if (!(x1 >= 0.0)) throw std::domain_error("x1 must be >= 0");
  const double sigma = std::sqrt(p.sigma_sq);
  return sigma * std_normal_pdf(x1 / sigma);
}

double upper_tail_second_moment(const SqueezeParams& p, double x1) {
  if (!(x1 >= 0.0)) throw std::domain_error("x1 must be >= 0");
  const double sigma = std::sqrt(p.sigma_sq);
  const double zt = x1 / sigma;
  const double p_plus = 0.5 * std::erfc(zt / std::numbers::sqrt2);
  return p.sigma_sq * (zt * std_normal_pdf(zt) + p_plus);
}

double upper_bound_UB(const SqueezeParams& p, double x1) {
  if (!(x1 >= 0.0) || !std::isfinite(x1)) {
    throw std::domain_error("x1 must be >= 0");
  }
  const RegionProbabilities regions = region_probabilities(p, x1);
  const double p_plus = regions.p_plus;
  if (p_plus < DBL_MIN) {
    throw std::domain_error(
        "upper_bound_UB unbounded: P_+ underflows for x1 >> sigma_X, the "
        "two-region bound is vacuous there");
  }
  const double s1 = upper_tail_first_moment(p, x1);
  const double s2 = upper_tail_second_moment(p, x1);
  const double m1 = s1 / p_plus;  // mean of the tail-conditioned state
  return s2 / p_plus - m1 * m1 + x1 * x1 * regions.p_zero +
         2.0 * x1 * regions.p_zero * m1;
}

double sigma_real_two_region(const SqueezeParams& p, double x1) {
  return std::sqrt(upper_bound_UB(p, x1));
}

double sigma_real_binned(const BinningScheme& b) {
  return (b.bin_width_Delta + 2.0 * b.overlap_delta) / (2.0 * b.gain_G);
}

AmplifiedInferenceBound sigma_inf_amplified(const SqueezeParams& p,
                                            double delta_p, double gain,
                                            bool ideal) {
  if (!(gain >= 1.0)) throw std::invalid_argument("gain G must be >= 1");
  if (!(delta_p >= 0.0)) throw std::invalid_argument("Delta_p must be >= 0");
  const double exact_inf = std::sqrt(inference_variance_optimal(p));
  if (ideal) return {exact_inf, exact_inf, true};
  const double readout = 2.0 * delta_p / gain;
  return {std::exp(-p.r) + readout, exact_inf + readout, p.r >= 1.0};
}

double sigma_inf_conditional(const std::vector<PairedSample>& samples,
                             double bin_width) {
  if (samples.size() < 2) {
    throw std::invalid_argument("sigma_inf_conditional needs >= 2 paired samples");
  }
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw std::invalid_argument("bin_width must be > 0");
  }
  struct Acc {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  std::map<std::int64_t, Acc> bins;
  for (const PairedSample& s : samples) {
    Acc& a = bins[static_cast<std::int64_t>(std::floor(s.p_b / bin_width))];
    ++a.n;
    const double d = s.p_a - a.mean;
    a.mean += d / static_cast<double>(a.n);
    a.m2 += d * (s.p_a - a.mean);
  }
  std::int64_t kept = 0;
  std::size_t singles = 0;
  std::int64_t example_bin = 0;
  double weighted = 0.0;
  for (const auto& [j, a] : bins) {
    if (a.n < 2) {
      ++singles;
      example_bin = j;
      continue;
    }
    kept += a.n;
    weighted += static_cast<double>(a.n) * (a.m2 / static_cast<double>(a.n - 1));
  }
  const double n_total = static_cast<double>(samples.size());
  const double dropped = (n_total - static_cast<double>(kept)) / n_total;
  if (kept == 0 || dropped > 1e-3) {
    std::ostringstream msg;
    msg << "sigma_inf_conditional: " << singles << " of " << bins.size()
        << " occupied bins hold a single sample (" << dropped * 100.0
        << "% of the mass, tolerated up to 0.1%); e.g. bin ["
        << static_cast<double>(example_bin) * bin_width << ", "
        << static_cast<double>(example_bin + 1) * bin_width
        << ") -- widen bin_width or supply more samples";
    throw EstimationError(msg.str());
  }
  return std::sqrt(weighted / static_cast<double>(kept));
}

CriterionReport incompleteness_check(double sigma_real, double sigma_inf,
                                     double distinctness, MethodTag tag) {
  if (!(sigma_real >= 0.0) || !(sigma_inf >= 0.0) || !(distinctness >= 0.0)) {
    throw std::invalid_argument("incompleteness_check inputs must be >= 0");
  }
  const double product = sigma_real * sigma_inf;
  return {sigma_real, sigma_inf, product, product < 0.5, distinctness, tag};
}

FeasibilityRecord feasibility_case(const SqueezeParams& p, double G,
                                   double Delta, double Delta_p, double delta) {
  if (!(G > 0.0) || !(Delta > 0.0) || !(Delta_p > 0.0) || !(delta > 0.0)) {
    throw std::invalid_argument("feasibility_case requires positive G, Delta, Delta_p, delta");
  }
  const double spread = Delta + 2.0 * delta;
  const double lhs = spread * (std::exp(-p.r) + 2.0 * Delta_p / G);
  const double case1_rhs = G * std::exp(p.r);
  return {lhs, G, lhs < G, spread, case1_rhs, spread < case1_rhs};
}

bool mixture_product_lemma_check(const std::vector<MixtureComponent>& mixture) {
  if (mixture.empty()) throw std::invalid_argument("mixture must be nonempty");
  double wsum = 0.0, vx = 0.0, vp = 0.0;
  for (const MixtureComponent& c : mixture) {
    if (!(c.weight >= 0.0)) throw std::invalid_argument("mixture weights must be >= 0");
    if (!(c.sigma_x * c.sigma_p >= 0.5 - 1e-12)) {
      throw std::invalid_argument(
          "mixture component violates sigma_x*sigma_p >= 1/2");
    }
    wsum += c.weight;
    vx += c.weight * c.sigma_x * c.sigma_x;
    vp += c.weight * c.sigma_p * c.sigma_p;
  }
  if (std::abs(wsum - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture weights must sum to 1");
  }
  return vx * vp >= 0.25 - 1e-15;
}

}  // namespace eprwmr
