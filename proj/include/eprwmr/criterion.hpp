#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "eprwmr/gaussian.hpp"

namespace eprwmr {

/// Multi-bin readout geometry for the amplified quadrature: bins of width
/// Delta with overlap half-width delta, two-region threshold x1, and
/// amplifier gain G. All lengths are in quadrature units.
struct BinningScheme {
  double bin_width_Delta;
  double overlap_delta;
  double threshold_x1;
  double gain_G;

  BinningScheme(double Delta, double delta, double x1, double G);
};

enum class MethodTag { two_region, binned_amplified, conditional_mc };
const char* to_string(MethodTag tag);

struct CriterionReport {
  double sigma_real;
  double sigma_inf;
  double product;
  bool satisfied;            // strict: product < 1/2
  double distinctness_level; // 2*delta, quadrature units
  MethodTag method_tag;
};

struct RegionProbabilities {
  double p_minus;
  double p_zero;
  double p_plus;
};

/// P(X < -x1), P(|X| <= x1), P(X > x1) for X ~ N(0, cosh2r/2).
RegionProbabilities region_probabilities(const SqueezeParams& p, double x1);

/// Variance of |Z| for Z ~ N(0, sigma²): sigma²(1 − 2/π).
double half_gaussian_variance(double sigma);

/// First absolute moment of the upper tail, S1 = ∫_{x1}^∞ x P(x) dx.
double upper_tail_first_moment(const SqueezeParams& p, double x1);
/// Second moment of the upper tail, S2 = ∫_{x1}^∞ x² P(x) dx.
double upper_tail_second_moment(const SqueezeParams& p, double x1);

/// Measurable upper bound U_B on the variance of either state of the
/// two-region decomposition of the Gaussian outcome distribution. Throws
/// std::domain_error when P_+ underflows (x1 ≫ σ_X): the bound is vacuous.
double upper_bound_UB(const SqueezeParams& p, double x1);

/// √U_B; the symmetric bound makes the weighted average collapse to U_B.
double sigma_real_two_region(const SqueezeParams& p, double x1);

/// (Delta + 2 delta)/(2G): binned-readout bound on the pre-amplification
/// spread of the directly measured quadrature.
double sigma_real_binned(const BinningScheme& b);

struct AmplifiedInferenceBound {
  double value;
  /// 1/√(2cosh2r) + 2Δ_p/G — exact replacement for the large-r e^{−r} term.
  double exact_value;
  /// The printed e^{−r} bound assumes e^r ≫ e^{−r}; false below r = 1.
  bool large_r_valid;
};

/// Bound on the inference deviation for the amplified remote quadrature:
/// ideal → 1/√(2cosh2r); bounded → e^{−r} + 2Δ_p/G.
AmplifiedInferenceBound sigma_inf_amplified(const SqueezeParams& p,
                                            double delta_p, double gain,
                                            bool ideal);

struct PairedSample {
  double p_a;
  double p_b;
};

/// Raised by sigma_inf_conditional when too much sample mass falls in
/// single-occupancy bins for the conditional variances to be estimable.
struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Monte Carlo conditional-inference deviation: bins p_b with the given
/// width and returns √(Σ_J P_J · Var(p_a | J)). Bins holding a single sample
/// are excluded (weights renormalized) as long as they carry ≤ 0.1% of the
/// sample mass; beyond that an EstimationError with bin diagnostics is thrown.
double sigma_inf_conditional(const std::vector<PairedSample>& samples,
                             double bin_width);

/// Assemble the incompleteness report; satisfied iff product < 1/2 strictly.
CriterionReport incompleteness_check(double sigma_real, double sigma_inf,
                                     double distinctness,
                                     MethodTag tag = MethodTag::two_region);

struct FeasibilityRecord {
  double lhs;       // (Δ + 2δ)(e^{−r} + 2Δ_p/G)
  double rhs;       // G
  bool feasible;    // lhs < G
  double case1_lhs; // Δ + 2δ
  double case1_rhs; // G e^{r}  (simplification valid when 2Δ_p/G ≈ 0)
  bool case1_feasible;
};

FeasibilityRecord feasibility_case(const SqueezeParams& p, double G,
                                   double Delta, double Delta_p, double delta);

struct MixtureComponent {
  double weight;
  double sigma_x;
  double sigma_p;
};

/// Cauchy-Schwarz lemma behind the criterion's contrapositive: for any
/// mixture of components individually obeying σ_x·σ_p ≥ 1/2, the pooled
/// second moments obey (ΣPσ_x²)(ΣPσ_p²) ≥ 1/4.
bool mixture_product_lemma_check(const std::vector<MixtureComponent>& mixture);

}  // namespace eprwmr
