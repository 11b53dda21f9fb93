#include "eprwmr/fbsde.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace eprwmr {
namespace {

constexpr std::uint64_t kPathSlot = 0;
constexpr std::uint64_t kBoundarySlot = 1;

// Stream ids partition as (role block | trajectory | purpose): draws for
// trajectory i never depend on the ensemble size or evaluation order.
inline std::uint64_t stream_id(std::uint64_t block, int traj,
                               std::uint64_t slot) {
  return (block << 40) | (static_cast<std::uint64_t>(traj) << 1) | slot;
}

void parallel_for(int n, int threads, const std::function<void(int, int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi);
  }
  for (std::thread& th : pool) th.join();
}

enum class Leg { forward, backward };

PathBlock integrate_ou(const BoundaryMixture& law, double g, double T,
                       double dt, int n, const StreamKey& key, Scheme scheme,
                       double stationary_var, int threads, Leg leg) {
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("rate g must be >= 0");
  }
  if (!(T > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("T and dt must be > 0");
  }
  if (n < 1) throw std::invalid_argument("trajectory count must be >= 1");
  if (!(stationary_var >= 0.0)) {
    throw std::invalid_argument("stationary variance must be >= 0");
  }
  if (g * dt > 0.1 + 1e-12) {
    std::ostringstream msg;
    msg << "stability: g*dt = " << g * dt << " exceeds 0.1; shrink dt";
    throw std::invalid_argument(msg.str());
  }
  const long long steps_ll = std::llround(T / dt);
  if (steps_ll < 1 ||
      std::abs(static_cast<double>(steps_ll) * dt - T) > 1e-9 * std::max(1.0, T)) {
    throw std::invalid_argument("T/dt must be an integer number of steps");
  }
  const int steps = static_cast<int>(steps_ll);

  const double decay = std::exp(-g * dt);
  const double step_sd = scheme == Scheme::exact
                             ? std::sqrt((1.0 - decay * decay) * stationary_var)
                             : std::sqrt(2.0 * stationary_var * g * dt);

  PathBlock block;
  block.n_traj = n;
  block.times.resize(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    block.times[static_cast<std::size_t>(k)] = static_cast<double>(k) * dt;
  }
  block.values.resize(static_cast<std::size_t>(n) * (steps + 1));

  const CounterRng rng(key.seed);
  parallel_for(n, threads, [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      double* row = block.values.data() +
                    static_cast<std::size_t>(i) * (steps + 1);
      const std::uint64_t noise = stream_id(key.block, i, kPathSlot);
      const double start = law.draw(rng, stream_id(key.block, i, kBoundarySlot));
      if (leg == Leg::backward) {
        row[steps] = start;
        // March in the backward-time variable: physical index walks down.
        for (int j = 0; j < steps; ++j) {
          const double prev = row[steps - j];
          const double z = rng.normal_at(noise, 2 * static_cast<std::uint64_t>(j));
          row[steps - j - 1] = scheme == Scheme::exact
                                   ? decay * prev + step_sd * z
                                   : prev - g * prev * dt + step_sd * z;
        }
      } else {
        row[0] = start;
        for (int j = 0; j < steps; ++j) {
          const double prev = row[j];
          const double z = rng.normal_at(noise, 2 * static_cast<std::uint64_t>(j));
          row[j + 1] = scheme == Scheme::exact
                           ? decay * prev + step_sd * z
                           : prev - g * prev * dt + step_sd * z;
        }
      }
    }
  });
  return block;
}

int grid_index(const std::vector<double>& times, double t, const char* what) {
  int best = 0;
  double best_gap = std::abs(times[0] - t);
  for (int k = 1; k < static_cast<int>(times.size()); ++k) {
    const double gap = std::abs(times[static_cast<std::size_t>(k)] - t);
    if (gap < best_gap) {
      best = k;
      best_gap = gap;
    }
  }
  if (best_gap > 1e-9 * std::max(1.0, std::abs(t))) {
    std::ostringstream msg;
    msg << what << " = " << t << " is not on the time grid";
    throw std::invalid_argument(msg.str());
  }
  return best;
}

}  // namespace

const char* to_string(Setting s) {
  switch (s) {
    case Setting::xx: return "XX";
    case Setting::pp: return "PP";
    case Setting::xp: return "XP";
    case Setting::single_mode: return "single";
  }
  return "unknown";
}

const char* to_string(Direction d) {
  return d == Direction::forward ? "forward" : "backward";
}

Setting setting_from_string(const std::string& s) {
  if (s == "XX" || s == "xx") return Setting::xx;
  if (s == "PP" || s == "pp") return Setting::pp;
  if (s == "XP" || s == "xp") return Setting::xp;
  if (s == "single" || s == "single_mode") return Setting::single_mode;
  throw std::invalid_argument("unknown setting '" + s +
                              "' (expected XX, PP, XP or single)");
}

BoundaryMixture::BoundaryMixture(std::vector<Component> comps)
    : components(std::move(comps)) {
  if (components.empty()) {
    throw std::invalid_argument("boundary mixture must have components");
  }
  double wsum = 0.0;
  for (const Component& c : components) {
    if (!(c.weight >= 0.0) || !std::isfinite(c.mean) || !(c.variance >= 0.0)) {
      throw std::invalid_argument("boundary component needs weight >= 0, finite mean, variance >= 0");
    }
    wsum += c.weight;
  }
  if (std::abs(wsum - 1.0) > 1e-9) {
    throw std::invalid_argument("boundary mixture weights must sum to 1");
  }
}

BoundaryMixture::BoundaryMixture(const Gaussian1D& g)
    : BoundaryMixture(std::vector<Component>{{1.0, g.mean, g.variance}}) {}

BoundaryMixture BoundaryMixture::point_mass(double x) {
  return BoundaryMixture(std::vector<Component>{{1.0, x, 0.0}});
}

double BoundaryMixture::draw(const CounterRng& rng,
                             std::uint64_t stream) const {
  const Component* chosen = &components.front();
  if (components.size() > 1) {
    const double u = rng.uniform_at(stream, 0);
    double acc = 0.0;
    for (const Component& c : components) {
      acc += c.weight;
      chosen = &c;
      if (u <= acc) break;
    }
  }
  double value = chosen->mean;
  if (chosen->variance > 0.0) {
    value += std::sqrt(chosen->variance) * rng.normal_at(stream, 2);
  }
  return value;
}

double BoundaryMixture::mean() const {
  double m = 0.0;
  for (const Component& c : components) m += c.weight * c.mean;
  return m;
}

double BoundaryMixture::variance() const {
  const double m = mean();
  double v = 0.0;
  for (const Component& c : components) {
    v += c.weight * (c.variance + (c.mean - m) * (c.mean - m));
  }
  return v;
}

double SimConfig::resolved_dt() const {
  if (dt > 0.0) return dt;
  const double target = std::min(0.01 / g, T / 200.0);
  const long long steps =
      std::max<long long>(200, std::llround(std::ceil(T / target - 1e-12)));
  return T / static_cast<double>(steps);
}

int SimConfig::n_steps() const {
  return static_cast<int>(std::llround(T / resolved_dt()));
}

double SimConfig::g_a() const {
  return (setting == Setting::pp) ? -g : g;
}

double SimConfig::g_b() const {
  switch (setting) {
    case Setting::xx: return g;
    case Setting::pp: return -g;
    case Setting::xp: return -g;
    case Setting::single_mode: return 0.0;
  }
  return 0.0;
}

double SimConfig::resolved_excess() const {
  if (eigenstate_excess > 0.0) return eigenstate_excess;
  const double sd = 0.05 * std::abs(x1 - x2);
  return sd * sd;
}

void SimConfig::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("amplification rate g must be > 0");
  }
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("total time T must be > 0");
  }
  if (n_traj < 1) throw std::invalid_argument("n_traj must be >= 1");
  const double rdt = resolved_dt();
  if (!(rdt > 0.0)) throw std::invalid_argument("dt must be > 0");
  const long long steps = std::llround(T / rdt);
  if (steps < 1 ||
      std::abs(static_cast<double>(steps) * rdt - T) > 1e-9 * std::max(1.0, T)) {
    throw std::invalid_argument("T/dt must be an integer number of steps");
  }
  if (g * rdt > 0.1 + 1e-12) {
    throw std::invalid_argument("stability: g*dt must not exceed 0.1");
  }
  if (setting == Setting::single_mode) {
    if (x1 == x2) {
      throw std::invalid_argument("superposition requires x1 != x2");
    }
    if (eigenstate_excess == 0.0) {
      throw std::invalid_argument("eigenstate excess v_e must be > 0 (or < 0 for the default)");
    }
  }
}

const std::vector<double>& TrajectoryEnsemble::series(Var v) const {
  switch (v) {
    case Var::x_a: return x_a;
    case Var::p_a: return p_a;
    case Var::x_b: return x_b;
    case Var::p_b: return p_b;
  }
  throw std::invalid_argument("unknown variable");
}

double TrajectoryEnsemble::at(Var v, int traj, int k) const {
  return series(v)[static_cast<std::size_t>(traj) * times.size() +
                   static_cast<std::size_t>(k)];
}

PathBlock integrate_backward_ou(const BoundaryMixture& boundary, double g,
                                double T, double dt, int n,
                                const StreamKey& key, Scheme scheme,
                                double stationary_var, int threads) {
  return integrate_ou(boundary, g, T, dt, n, key, scheme, stationary_var,
                      threads, Leg::backward);
}

PathBlock integrate_forward_ou(const BoundaryMixture& initial, double g,
                               double T, double dt, int n,
                               const StreamKey& key, Scheme scheme,
                               double stationary_var, int threads) {
  return integrate_ou(initial, g, T, dt, n, key, scheme, stationary_var,
                      threads, Leg::forward);
}

TrajectoryEnsemble simulate_epr(const SimConfig& config, int threads) {
  config.validate();
  if (config.setting == Setting::xp) return simulate_schrodinger(config, threads);
  if (config.setting == Setting::single_mode) {
    throw std::invalid_argument(
        "simulate_epr covers XX/PP; use simulate_superposition for single mode");
  }
  const SqueezeParams& p = config.squeeze;
  const double rdt = config.resolved_dt();
  const double gT = config.g * config.T;
  const bool xx = config.setting == Setting::xx;

  const SectorGaussian term =
      q_sector_variances(p, gT, xx ? Sector::x : Sector::p);
  const SectorGaussian init =
      q_sector_variances(p, 0.0, xx ? Sector::p : Sector::x);
  // Role blocks 0..3: backward squeezed / backward antisqueezed combination,
  // then forward partner with squeezed / antisqueezed initial variance. The
  // XX and PP runs use identical role statistics, which realizes the exact
  // p_± ↔ x_∓ mirror for a shared seed.
  const double term_sq = xx ? term.variance_diff : term.variance_sum;
  const double term_anti = xx ? term.variance_sum : term.variance_diff;
  const double init_sq = xx ? init.variance_sum : init.variance_diff;
  const double init_anti = xx ? init.variance_diff : init.variance_sum;

  // The ± combinations carry doubled noise (2g), so their floor is 1.
  const double floor = 2.0 * kVacuumVariance;
  using C = BoundaryMixture::Component;
  const PathBlock b_sq = integrate_backward_ou(
      BoundaryMixture(std::vector<C>{{1.0, 0.0, term_sq}}), config.g, config.T,
      rdt, config.n_traj, {config.seed, 0}, config.scheme, floor, threads);
  const PathBlock b_anti = integrate_backward_ou(
      BoundaryMixture(std::vector<C>{{1.0, 0.0, term_anti}}), config.g,
      config.T, rdt, config.n_traj, {config.seed, 1}, config.scheme, floor,
      threads);
  const PathBlock f_sq = integrate_forward_ou(
      BoundaryMixture(std::vector<C>{{1.0, 0.0, init_sq}}), config.g, config.T,
      rdt, config.n_traj, {config.seed, 2}, config.scheme, floor, threads);
  const PathBlock f_anti = integrate_forward_ou(
      BoundaryMixture(std::vector<C>{{1.0, 0.0, init_anti}}), config.g,
      config.T, rdt, config.n_traj, {config.seed, 3}, config.scheme, floor,
      threads);

  TrajectoryEnsemble e;
  e.config = config;
  e.times = b_sq.times;
  const std::size_t total = b_sq.values.size();
  e.x_a.resize(total);
  e.p_a.resize(total);
  e.x_b.resize(total);
  e.p_b.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    const double back_sum = 0.5 * (b_anti.values[i] + b_sq.values[i]);
    const double back_diff = 0.5 * (b_anti.values[i] - b_sq.values[i]);
    const double fwd_sum = 0.5 * (f_sq.values[i] + f_anti.values[i]);
    const double fwd_diff = 0.5 * (f_sq.values[i] - f_anti.values[i]);
    if (xx) {
      // x_+ = b_anti, x_- = b_sq, p_+ = f_sq, p_- = f_anti.
      e.x_a[i] = back_sum;
      e.x_b[i] = back_diff;
      e.p_a[i] = fwd_sum;
      e.p_b[i] = fwd_diff;
    } else {
      // p_+ = b_sq, p_- = b_anti, x_- = f_sq, x_+ = f_anti.
      e.p_a[i] = 0.5 * (b_sq.values[i] + b_anti.values[i]);
      e.p_b[i] = 0.5 * (b_sq.values[i] - b_anti.values[i]);
      e.x_a[i] = 0.5 * (f_anti.values[i] + f_sq.values[i]);
      e.x_b[i] = 0.5 * (f_anti.values[i] - f_sq.values[i]);
    }
  }
  if (xx) {
    e.directions = {Direction::backward, Direction::forward,
                    Direction::backward, Direction::forward};
  } else {
    e.directions = {Direction::forward, Direction::backward,
                    Direction::forward, Direction::backward};
  }
  return e;
}

TrajectoryEnsemble simulate_schrodinger(const SimConfig& config, int threads) {
  config.validate();
  if (config.setting != Setting::xp) {
    throw std::invalid_argument("simulate_schrodinger requires the XP setting");
  }
  const SqueezeParams& p = config.squeeze;
  const double rdt = config.resolved_dt();
  const double gT = config.g * config.T;
  const double cosh2r = std::cosh(2.0 * p.r);
  // Amplified Q marginal of (x_A, p_B) factorizes; each single-site variable
  // keeps the 1/2 floor and amplifies its cosh2r/2 excess.
  const double v_term = 0.5 * (1.0 + std::exp(2.0 * gT) * cosh2r);
  const double v_init = 0.5 * (1.0 + cosh2r);

  using C = BoundaryMixture::Component;
  const PathBlock back_xa = integrate_backward_ou(
      BoundaryMixture(std::vector<C>{{1.0, 0.0, v_term}}), config.g, config.T,
      rdt, config.n_traj, {config.seed, 0}, config.scheme, kVacuumVariance,
      threads);
  const PathBlock back_pb = integrate_backward_ou(
      BoundaryMixture(std::vector<C>{{1.0, 0.0, v_term}}), config.g, config.T,
      rdt, config.n_traj, {config.seed, 1}, config.scheme, kVacuumVariance,
      threads);
  const PathBlock fwd_pa = integrate_forward_ou(
      BoundaryMixture(std::vector<C>{{1.0, 0.0, v_init}}), config.g, config.T,
      rdt, config.n_traj, {config.seed, 2}, config.scheme, kVacuumVariance,
      threads);
  const PathBlock fwd_xb = integrate_forward_ou(
      BoundaryMixture(std::vector<C>{{1.0, 0.0, v_init}}), config.g, config.T,
      rdt, config.n_traj, {config.seed, 3}, config.scheme, kVacuumVariance,
      threads);

  TrajectoryEnsemble e;
  e.config = config;
  e.times = back_xa.times;
  e.x_a = back_xa.values;
  e.p_b = back_pb.values;
  e.p_a = fwd_pa.values;
  e.x_b = fwd_xb.values;
  e.directions = {Direction::backward, Direction::forward, Direction::forward,
                  Direction::backward};
  return e;
}

TrajectoryEnsemble simulate_superposition(const SimConfig& config,
                                          int threads) {
  config.validate();
  if (config.setting != Setting::single_mode) {
    throw std::invalid_argument("simulate_superposition requires the single-mode setting");
  }
  const double rdt = config.resolved_dt();
  const double amp = std::exp(config.g * config.T);
  const double ve = config.resolved_excess();
  // Component Q variance: hidden vacuum floor 1/2 plus amplified excess.
  const double v_comp = 0.5 + amp * amp * ve;
  using C = BoundaryMixture::Component;
  const BoundaryMixture terminal(std::vector<C>{
      {0.5, amp * config.x1, v_comp}, {0.5, amp * config.x2, v_comp}});
  const PathBlock back_x =
      integrate_backward_ou(terminal, config.g, config.T, rdt, config.n_traj,
                            {config.seed, 0}, config.scheme, kVacuumVariance,
                            threads);
  // Minimum-uncertainty partner of the squeezed component: quantum p-variance
  // 1/(4 v_e), plus the Q vacuum 1/2; both components share it, and the
  // x-displacement does not move the p marginal (interference suppressed).
  const double v_p0 = 0.5 + 0.25 / ve;
  const PathBlock fwd_p = integrate_forward_ou(
      BoundaryMixture(std::vector<C>{{1.0, 0.0, v_p0}}), config.g, config.T,
      rdt, config.n_traj, {config.seed, 2}, config.scheme, kVacuumVariance,
      threads);

  TrajectoryEnsemble e;
  e.config = config;
  e.times = back_x.times;
  e.x_a = back_x.values;
  e.p_a = fwd_p.values;
  e.directions = {Direction::backward, Direction::forward, Direction::forward,
                  Direction::forward};
  return e;
}

TrajectoryEnsemble simulate_superposition(double x1, double x2, double g,
                                          double T, double dt, int n,
                                          std::uint64_t seed) {
  SimConfig config;
  config.setting = Setting::single_mode;
  config.x1 = x1;
  config.x2 = x2;
  config.g = g;
  config.T = T;
  config.dt = dt;
  config.n_traj = n;
  config.seed = seed;
  return simulate_superposition(config);
}

BandReport classify_bands(const TrajectoryEnsemble& e, double t_m,
                          const std::vector<double>& centers) {
  if (e.times.empty() || e.config.n_traj < 1) {
    throw std::invalid_argument("classify_bands: empty ensemble");
  }
  if (centers.empty()) {
    throw std::invalid_argument("classify_bands: centers must be nonempty");
  }
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      if (centers[i] == centers[j]) {
        throw std::invalid_argument("classify_bands: centers must be distinct");
      }
    }
  }
  const Var primary =
      e.config.setting == Setting::pp ? Var::p_a : Var::x_a;
  if (e.series(primary).empty()) {
    throw std::invalid_argument("classify_bands: empty ensemble");
  }
  const int k_m = grid_index(e.times, t_m, "t_m");
  const int k_T = e.n_times() - 1;
  const int n = e.config.n_traj;
  const int n_bands = static_cast<int>(centers.size());

  auto nearest = [](const std::vector<double>& cs, double v) {
    int best = 0;
    double gap = std::abs(v - cs[0]);
    for (int b = 1; b < static_cast<int>(cs.size()); ++b) {
      const double d = std::abs(v - cs[static_cast<std::size_t>(b)]);
      if (d < gap) {
        gap = d;
        best = b;
      }
    }
    return best;
  };

  BandReport report;
  report.band_centers = centers;
  report.t_m = e.times[static_cast<std::size_t>(k_m)];
  report.band_assignments.resize(static_cast<std::size_t>(n));
  std::vector<long long> counts(static_cast<std::size_t>(n_bands), 0);
  std::vector<double> sums(static_cast<std::size_t>(n_bands), 0.0);
  for (int i = 0; i < n; ++i) {
    const double v = e.at(primary, i, k_m);
    const int b = nearest(centers, v);
    report.band_assignments[static_cast<std::size_t>(i)] = b;
    ++counts[static_cast<std::size_t>(b)];
    sums[static_cast<std::size_t>(b)] += v;
  }
  std::vector<double> sq(static_cast<std::size_t>(n_bands), 0.0);
  for (int i = 0; i < n; ++i) {
    const int b = report.band_assignments[static_cast<std::size_t>(i)];
    if (counts[static_cast<std::size_t>(b)] < 2) continue;
    const double m = sums[static_cast<std::size_t>(b)] /
                     static_cast<double>(counts[static_cast<std::size_t>(b)]);
    const double d = e.at(primary, i, k_m) - m;
    sq[static_cast<std::size_t>(b)] += d * d;
  }
  report.fractions.resize(static_cast<std::size_t>(n_bands));
  report.residual_spread.resize(static_cast<std::size_t>(n_bands));
  for (int b = 0; b < n_bands; ++b) {
    const long long c = counts[static_cast<std::size_t>(b)];
    report.fractions[static_cast<std::size_t>(b)] =
        static_cast<double>(c) / static_cast<double>(n);
    report.residual_spread[static_cast<std::size_t>(b)] =
        c >= 2 ? std::sqrt(sq[static_cast<std::size_t>(b)] /
                           static_cast<double>(c - 1))
               : 0.0;
  }

  if (k_T > k_m) {
    const double scale =
        std::exp(e.config.g * (e.times[static_cast<std::size_t>(k_T)] -
                               report.t_m));
    std::vector<double> scaled(centers.size());
    for (std::size_t b = 0; b < centers.size(); ++b) scaled[b] = centers[b] * scale;
    long long flips = 0;
    for (int i = 0; i < n; ++i) {
      if (nearest(scaled, e.at(primary, i, k_T)) !=
          report.band_assignments[static_cast<std::size_t>(i)]) {
        ++flips;
      }
    }
    report.defect = static_cast<double>(flips) / static_cast<double>(n);
    report.has_defect = true;
  }

  double min_sep = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const double sep = std::abs(centers[i] - centers[j]);
      if (min_sep == 0.0 || sep < min_sep) min_sep = sep;
    }
  }
  const double max_spread =
      *std::max_element(report.residual_spread.begin(),
                        report.residual_spread.end());
  report.warning_unresolved = n_bands > 1 && min_sep < 4.0 * max_spread;
  return report;
}

std::vector<double> xp_inferred_p_a(const TrajectoryEnsemble& e, double t_m) {
  if (e.config.setting != Setting::xp) {
    throw std::invalid_argument("inferred P_A outcomes need an XP ensemble");
  }
  const int k_m = grid_index(e.times, t_m, "t_m");
  const double gain = std::exp(e.config.g * e.times[static_cast<std::size_t>(k_m)]);
  std::vector<double> out(static_cast<std::size_t>(e.config.n_traj));
  for (int i = 0; i < e.config.n_traj; ++i) {
    out[static_cast<std::size_t>(i)] = -e.at(Var::p_b, i, k_m) / gain;
  }
  return out;
}

}  // namespace eprwmr
