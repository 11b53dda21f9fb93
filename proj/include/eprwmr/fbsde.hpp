#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "eprwmr/gaussian.hpp"
#include "eprwmr/phase_space.hpp"
#include "eprwmr/rng.hpp"

namespace eprwmr {

/// Fixed default seed so a flagless run is reproducible.
inline constexpr std::uint64_t kDefaultSeed = 12358;

enum class Setting { xx, pp, xp, single_mode };
enum class Scheme { exact, euler_maruyama };
enum class Direction { forward, backward };

const char* to_string(Setting s);
const char* to_string(Direction d);
Setting setting_from_string(const std::string& s);

/// One-dimensional Gaussian-mixture boundary law. Component variances may be
/// zero (point mass), unlike the strict analytic Gaussian1D type.
struct BoundaryMixture {
  struct Component {
    double weight;
    double mean;
    double variance;
  };

  std::vector<Component> components;

  explicit BoundaryMixture(std::vector<Component> comps);
  explicit BoundaryMixture(const Gaussian1D& g);
  static BoundaryMixture point_mass(double x);

  /// Draw using the dedicated boundary stream of one trajectory (uniform
  /// slot 0 selects the component, normal slots 2-3 the offset).
  double draw(const CounterRng& rng, std::uint64_t stream) const;

  double mean() const;
  double variance() const;
};

struct SimConfig {
  SqueezeParams squeeze{0.0};
  double g = 1.0;  // amplification-rate magnitude; sign per site follows `setting`
  double T = 2.0;
  double dt = 0.0;  // 0 -> default min(0.01/g, T/200)
  int n_traj = 40;
  std::uint64_t seed = kDefaultSeed;
  Setting setting = Setting::xx;
  Scheme scheme = Scheme::exact;
  // single_mode superposition inputs:
  double x1 = 0.0;
  double x2 = 0.0;
  /// Squeezed-eigenstate Q excess v_e; < 0 -> default (0.05·|x1-x2|)².
  double eigenstate_excess = -1.0;

  double resolved_dt() const;
  int n_steps() const;
  double g_a() const;  // signed: + amplifies X, − amplifies P at site A
  double g_b() const;
  double resolved_excess() const;
  void validate() const;
};

enum class Var { x_a = 0, p_a = 1, x_b = 2, p_b = 3 };

struct TrajectoryEnsemble {
  SimConfig config;
  std::vector<double> times;
  /// Row-major [trajectory][time]; x_b/p_b stay empty for single_mode, where
  /// x_a/p_a hold the lone mode's quadratures.
  std::vector<double> x_a, p_a, x_b, p_b;
  std::array<Direction, 4> directions{};

  bool single_mode() const { return config.setting == Setting::single_mode; }
  int n_times() const { return static_cast<int>(times.size()); }
  const std::vector<double>& series(Var v) const;
  double at(Var v, int traj, int k) const;
};

struct BandReport {
  std::vector<int> band_assignments;    // per trajectory, index into centers
  std::vector<double> band_centers;
  std::vector<double> fractions;        // per band
  std::vector<double> residual_spread;  // per band, std dev at t_m
  double t_m = 0.0;
  double defect = 0.0;  // fraction whose assignment changes between t_m and T
  bool has_defect = false;
  bool warning_unresolved = false;
};

struct StreamKey {
  std::uint64_t seed;
  std::uint64_t block;
};

struct PathBlock {
  std::vector<double> times;
  std::vector<double> values;  // row-major [trajectory][time]
  int n_traj = 0;

  double at(int traj, int k) const {
    return values[static_cast<std::size_t>(traj) * times.size() +
                  static_cast<std::size_t>(k)];
  }
};

/// Ornstein-Uhlenbeck relaxation toward `stationary_var` run against physical
/// time from a terminal draw at t = T; paths are reported on the physical
/// axis, so they grow toward T. Default scheme is the exact one-step update
/// (no discretization bias); Euler-Maruyama is available for fidelity
/// comparisons. Rate g may be 0 (paths stay at the boundary draw).
PathBlock integrate_backward_ou(const BoundaryMixture& boundary, double g,
                                double T, double dt, int n,
                                const StreamKey& key,
                                Scheme scheme = Scheme::exact,
                                double stationary_var = kVacuumVariance,
                                int threads = 1);

/// Same dynamics integrated forward from an initial draw; variables decay
/// toward the noise floor.
PathBlock integrate_forward_ou(const BoundaryMixture& initial, double g,
                               double T, double dt, int n,
                               const StreamKey& key,
                               Scheme scheme = Scheme::exact,
                               double stationary_var = kVacuumVariance,
                               int threads = 1);

/// Paired-mode amplification run. XX amplifies both X quadratures (x_± solved
/// backward from the amplified Q sector, p_± forward); PP mirrors it with
/// p_± replacing x_∓. An XP config is routed to simulate_schrodinger.
TrajectoryEnsemble simulate_epr(const SimConfig& config, int threads = 1);

/// Mixed setting: X_A and P_B amplified (backward, independent terminal
/// draws from the factorized amplified marginal), P_A and X_B integrated
/// forward for diagnostics.
TrajectoryEnsemble simulate_schrodinger(const SimConfig& config,
                                        int threads = 1);

/// Single-mode measurement of X on an equal superposition of two x-localized
/// components centered at x1 and x2.
TrajectoryEnsemble simulate_superposition(const SimConfig& config,
                                          int threads = 1);
TrajectoryEnsemble simulate_superposition(double x1, double x2, double g,
                                          double T, double dt, int n,
                                          std::uint64_t seed);

/// Nearest-center band assignment of the amplified quadrature at t_m
/// (centers are given at t_m; the t = T comparison rescales them by the
/// accumulated gain). Reports fractions, in-band spreads, and the
/// predetermination defect when T > t_m.
BandReport classify_bands(const TrajectoryEnsemble& e, double t_m,
                          const std::vector<double>& centers);

/// Inferred P_A outcomes −p_B(t_m)/e^{g·t_m} of an XP ensemble.
std::vector<double> xp_inferred_p_a(const TrajectoryEnsemble& e, double t_m);

}  // namespace eprwmr
