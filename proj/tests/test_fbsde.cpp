#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "eprwmr/fbsde.hpp"
#include "eprwmr/schrodinger.hpp"
#include "support/oracles.hpp"

using namespace eprwmr;

namespace {

using C = BoundaryMixture::Component;

std::vector<double> column(const PathBlock& b, int k) {
  std::vector<double> out(static_cast<std::size_t>(b.n_traj));
  for (int i = 0; i < b.n_traj; ++i) out[static_cast<std::size_t>(i)] = b.at(i, k);
  return out;
}

std::vector<double> column(const TrajectoryEnsemble& e, Var v, int k) {
  std::vector<double> out(static_cast<std::size_t>(e.config.n_traj));
  for (int i = 0; i < e.config.n_traj; ++i) {
    out[static_cast<std::size_t>(i)] = e.at(v, i, k);
  }
  return out;
}

}  // namespace

TEST_CASE("boundary mixture: validation, moments, draws") {
  CHECK_THROWS_AS(BoundaryMixture(std::vector<C>{}), std::invalid_argument);
  CHECK_THROWS_AS(BoundaryMixture(std::vector<C>{{0.7, 0.0, 1.0}}),
                  std::invalid_argument);  // weights must sum to 1
  CHECK_THROWS_AS(BoundaryMixture(std::vector<C>{{-0.5, 0.0, 1.0},
                                                 {1.5, 0.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BoundaryMixture(std::vector<C>{{1.0, 0.0, -1.0}}),
                  std::invalid_argument);

  const BoundaryMixture two(std::vector<C>{{0.5, 4.0, 0.25}, {0.5, -4.0, 0.25}});
  CHECK(two.mean() == 0.0);
  // Between-component spread adds to the within-component variance.
  CHECK(two.variance() == doctest::Approx(0.25 + 16.0).epsilon(1e-15));

  const BoundaryMixture pt = BoundaryMixture::point_mass(2.5);
  CHECK(pt.mean() == 2.5);
  CHECK(pt.variance() == 0.0);
  const CounterRng rng(7);
  CHECK(pt.draw(rng, 0) == 2.5);  // no noise consumed for a point mass

  // Component selection and offsets reproduce the mixture statistics.
  const std::size_t n = 100000;
  std::vector<double> draws(n);
  int upper = 0;
  for (std::size_t i = 0; i < n; ++i) {
    draws[i] = two.draw(rng, i);
    if (draws[i] > 0.0) ++upper;
  }
  CHECK(std::abs(oracle::mean(draws)) < 5.0 * oracle::se_mean(16.25, n));
  CHECK(std::abs(static_cast<double>(upper) / n - 0.5) <
        5.0 * std::sqrt(0.25 / n));
  CHECK(std::abs(oracle::variance(draws) - 16.25) <
        5.0 * oracle::se_variance(16.25, n));
}

TEST_CASE("relaxation legs reproduce the analytic variance curves") {
  const double g = 1.0, T = 1.0, dt = 0.05, s = 0.5;
  const int n = 100000;

  SUBCASE("backward: terminal law relaxes toward the floor at early times") {
    const double v_T = 3.0;
    const PathBlock b = integrate_backward_ou(
        BoundaryMixture(std::vector<C>{{1.0, 0.0, v_T}}), g, T, dt, n,
        {1234, 0});
    REQUIRE(b.times.size() == 21);
    CHECK(b.times.front() == 0.0);
    CHECK(b.times.back() == doctest::Approx(T).epsilon(1e-15));
    for (int k : {0, 7, 14, 20}) {
      const double tau = T - b.times[static_cast<std::size_t>(k)];
      const double expect = std::exp(-2.0 * g * tau) * v_T +
                            (1.0 - std::exp(-2.0 * g * tau)) * s;
      const auto col = column(b, k);
      CHECK(std::abs(oracle::variance(col) - expect) <
            5.0 * oracle::se_variance(expect, static_cast<std::size_t>(n)));
      CHECK(std::abs(oracle::mean(col)) <
            5.0 * oracle::se_mean(expect, static_cast<std::size_t>(n)));
    }
  }

  SUBCASE("forward: cold start fills toward the stationary variance") {
    const PathBlock f = integrate_forward_ou(BoundaryMixture::point_mass(0.0),
                                             g, T, dt, n, {99, 0});
    for (int k : {1, 10, 20}) {
      const double t = f.times[static_cast<std::size_t>(k)];
      const double expect = (1.0 - std::exp(-2.0 * g * t)) * s;
      const auto col = column(f, k);
      CHECK(std::abs(oracle::variance(col) - expect) <
            5.0 * oracle::se_variance(expect, static_cast<std::size_t>(n)));
    }
  }

  SUBCASE("forward from the stationary law stays stationary") {
    const PathBlock f = integrate_forward_ou(
        BoundaryMixture(std::vector<C>{{1.0, 0.0, s}}), g, T, dt, n, {5, 0});
    for (int k : {0, 10, 20}) {
      const auto col = column(f, k);
      CHECK(std::abs(oracle::variance(col) - s) <
            5.0 * oracle::se_variance(s, static_cast<std::size_t>(n)));
    }
  }

  SUBCASE("decaying mean: a displaced start relaxes exponentially") {
    const PathBlock f = integrate_forward_ou(BoundaryMixture::point_mass(6.0),
                                             g, T, dt, 20000, {42, 0});
    for (int k : {5, 20}) {
      const double t = f.times[static_cast<std::size_t>(k)];
      const auto col = column(f, k);
      const double expect_var = (1.0 - std::exp(-2.0 * g * t)) * s;
      CHECK(std::abs(oracle::mean(col) - 6.0 * std::exp(-g * t)) <
            5.0 * oracle::se_mean(expect_var, col.size()));
    }
  }
}

TEST_CASE("discretized scheme matches its own bias curve and the guardrail") {
  const double g = 1.0, T = 1.0, dt = 0.05, s = 0.5;
  const int n = 100000;
  const PathBlock em = integrate_forward_ou(BoundaryMixture::point_mass(0.0),
                                            g, T, dt, n, {321, 0},
                                            Scheme::euler_maruyama);
  // Euler-Maruyama variance recursion: v_{k+1} = (1 - g dt)^2 v_k + 2 s g dt.
  double v = 0.0;
  const double d = 1.0 - g * dt;
  for (int k = 0; k < 20; ++k) v = d * d * v + 2.0 * s * g * dt;
  const auto col = column(em, 20);
  CHECK(std::abs(oracle::variance(col) - v) <
        5.0 * oracle::se_variance(v, static_cast<std::size_t>(n)));
  // The discretization bias is real: (1 - g dt)^2 contracts slower than
  // e^{-2 g dt}, so the recursion sits above the exact curve by O(dt) ...
  const double exact_v = (1.0 - std::exp(-2.0 * g * T)) * s;
  CHECK(v > exact_v);
  CHECK(std::abs(v - exact_v) > 1e-3);
  // ... yet small at g dt = 0.002.
  double v_fine = 0.0;
  const double df = 1.0 - 0.002;
  for (int k = 0; k < 500; ++k) v_fine = df * df * v_fine + 2.0 * s * 0.002;
  CHECK(v_fine == doctest::Approx(exact_v).epsilon(0.005));

  CHECK_THROWS_WITH_AS(
      integrate_forward_ou(BoundaryMixture::point_mass(0.0), 2.0, 1.0, 0.1, 10,
                           {0, 0}),
      doctest::Contains("stability"), std::invalid_argument);
  CHECK_THROWS_AS(
      integrate_forward_ou(BoundaryMixture::point_mass(0.0), 1.0, 1.0, 0.3, 10,
                           {0, 0}),
      std::invalid_argument);  // T/dt not an integer
  CHECK_THROWS_AS(
      integrate_forward_ou(BoundaryMixture::point_mass(0.0), -1.0, 1.0, 0.1,
                           10, {0, 0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      integrate_forward_ou(BoundaryMixture::point_mass(0.0), 1.0, 1.0, 0.1, 0,
                           {0, 0}),
      std::invalid_argument);
}

TEST_CASE("zero rate freezes every path at its boundary draw") {
  const PathBlock f = integrate_forward_ou(
      BoundaryMixture(std::vector<C>{{1.0, 1.0, 2.0}}), 0.0, 1.0, 0.1, 50,
      {77, 0});
  for (int i = 0; i < 50; ++i) {
    for (int k = 1; k <= 10; ++k) CHECK(f.at(i, k) == f.at(i, 0));
  }
}

TEST_CASE("draws are keyed by trajectory id, not batch layout") {
  const BoundaryMixture law(std::vector<C>{{1.0, 0.0, 2.0}});

  SUBCASE("identical runs are bit-identical") {
    const PathBlock a = integrate_backward_ou(law, 1.0, 1.0, 0.05, 64, {12, 3});
    const PathBlock b = integrate_backward_ou(law, 1.0, 1.0, 0.05, 64, {12, 3});
    CHECK(a.values == b.values);
  }

  SUBCASE("thread count does not change results") {
    const PathBlock t1 =
        integrate_backward_ou(law, 1.0, 1.0, 0.05, 101, {12, 3},
                              Scheme::exact, 0.5, 1);
    const PathBlock t3 =
        integrate_backward_ou(law, 1.0, 1.0, 0.05, 101, {12, 3},
                              Scheme::exact, 0.5, 3);
    CHECK(t1.values == t3.values);
  }

  SUBCASE("a larger batch extends, never perturbs, a smaller one") {
    const PathBlock small = integrate_forward_ou(law, 1.0, 1.0, 0.05, 50, {9, 1});
    const PathBlock big = integrate_forward_ou(law, 1.0, 1.0, 0.05, 80, {9, 1});
    for (int i = 0; i < 50; ++i) {
      for (int k = 0; k <= 20; ++k) CHECK(small.at(i, k) == big.at(i, k));
    }
  }

  SUBCASE("different seeds and different blocks decorrelate") {
    const PathBlock a = integrate_forward_ou(law, 1.0, 1.0, 0.05, 4, {9, 1});
    const PathBlock b = integrate_forward_ou(law, 1.0, 1.0, 0.05, 4, {10, 1});
    const PathBlock c = integrate_forward_ou(law, 1.0, 1.0, 0.05, 4, {9, 2});
    CHECK(a.values != b.values);
    CHECK(a.values != c.values);
  }
}

TEST_CASE("default step resolution honors both caps and divides T exactly") {
  SimConfig cfg;
  cfg.squeeze = SqueezeParams(1.0);

  cfg.g = 1.0;
  cfg.T = 2.0;
  CHECK(cfg.resolved_dt() == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(cfg.n_steps() == 200);

  cfg.g = 20.0;  // rate cap takes over: dt <= 0.01/g
  CHECK(cfg.resolved_dt() == doctest::Approx(0.0005).epsilon(1e-12));
  CHECK(cfg.g * cfg.resolved_dt() <= 0.1 + 1e-12);

  cfg.g = 1.0;
  cfg.T = 2.0345;  // awkward horizon still yields an integer grid
  const double rdt = cfg.resolved_dt();
  const double steps = cfg.T / rdt;
  CHECK(std::abs(steps - std::round(steps)) < 1e-9);
  CHECK(cfg.n_steps() >= 200);

  cfg.T = 2.0;
  cfg.dt = 0.2;  // user-pinned dt must respect the stability margin
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.dt = 0.3;  // and divide T
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.dt = 0.1;
  CHECK_NOTHROW(cfg.validate());
  cfg.dt = 0.0;

  cfg.g = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.g = 1.0;
  cfg.n_traj = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("signed site rates follow the measurement setting") {
  SimConfig cfg;
  cfg.setting = Setting::xx;
  CHECK(cfg.g_a() == cfg.g);
  CHECK(cfg.g_b() == cfg.g);
  cfg.setting = Setting::pp;
  CHECK(cfg.g_a() == -cfg.g);
  CHECK(cfg.g_b() == -cfg.g);
  cfg.setting = Setting::xp;
  CHECK(cfg.g_a() == cfg.g);
  CHECK(cfg.g_b() == -cfg.g);
  cfg.setting = Setting::single_mode;
  CHECK(cfg.g_b() == 0.0);
}

TEST_CASE("setting names round-trip") {
  CHECK(setting_from_string("XX") == Setting::xx);
  CHECK(setting_from_string("xx") == Setting::xx);
  CHECK(setting_from_string("PP") == Setting::pp);
  CHECK(setting_from_string("xp") == Setting::xp);
  CHECK(setting_from_string("single") == Setting::single_mode);
  CHECK(setting_from_string("single_mode") == Setting::single_mode);
  CHECK_THROWS_AS(setting_from_string("XY"), std::invalid_argument);
  CHECK(std::string(to_string(Setting::xx)) == "XX");
  CHECK(std::string(to_string(Setting::single_mode)) == "single");
  CHECK(std::string(to_string(Direction::forward)) == "forward");
  CHECK(std::string(to_string(Direction::backward)) == "backward");
}

TEST_CASE("paired amplification run: moments, directions, determinism") {
  SimConfig cfg;
  cfg.squeeze = SqueezeParams(2.0);
  cfg.g = 1.0;
  cfg.T = 2.0;
  cfg.dt = 0.02;
  cfg.n_traj = 30000;
  cfg.seed = 12358;
  cfg.setting = Setting::xx;
  const TrajectoryEnsemble e = simulate_epr(cfg, 3);

  const int kT = e.n_times() - 1;
  REQUIRE(kT == 100);
  CHECK(e.directions[0] == Direction::backward);  // x_a
  CHECK(e.directions[1] == Direction::forward);   // p_a
  CHECK(e.directions[2] == Direction::backward);  // x_b
  CHECK(e.directions[3] == Direction::forward);   // p_b

  // Terminal combination variances: squeezed difference, antisqueezed sum.
  const std::size_t n = static_cast<std::size_t>(cfg.n_traj);
  std::vector<double> diff(n), sum(n);
  for (int i = 0; i < cfg.n_traj; ++i) {
    const double xa = e.at(Var::x_a, i, kT), xb = e.at(Var::x_b, i, kT);
    diff[static_cast<std::size_t>(i)] = xa - xb;
    sum[static_cast<std::size_t>(i)] = xa + xb;
  }
  const double v_diff = 1.0 + std::exp(2.0 * 2.0) * std::exp(-4.0);  // = 2
  const double v_sum = 1.0 + std::exp(2.0 * 2.0) * std::exp(4.0);
  CHECK(std::abs(oracle::variance(diff) - v_diff) <
        5.0 * oracle::se_variance(v_diff, n));
  CHECK(std::abs(oracle::variance(sum) - v_sum) <
        5.0 * oracle::se_variance(v_sum, n));

  // Normalizing by the gain exposes the squeezed floor 2 e^{-2r}.
  const double gain_sq = std::exp(2.0 * cfg.g * cfg.T);
  CHECK(std::abs(oracle::variance(diff) / gain_sq - 2.0 * std::exp(-4.0)) <
        5.0 * oracle::se_variance(v_diff, n) / gain_sq);

  // Determinism across thread counts, bit for bit.
  SimConfig small = cfg;
  small.n_traj = 500;
  const TrajectoryEnsemble a = simulate_epr(small, 1);
  const TrajectoryEnsemble b = simulate_epr(small, 4);
  CHECK(a.x_a == b.x_a);
  CHECK(a.p_a == b.p_a);
  CHECK(a.x_b == b.x_b);
  CHECK(a.p_b == b.p_b);

  // Trajectory prefix stability under batch growth.
  SimConfig tiny = cfg;
  tiny.n_traj = 100;
  const TrajectoryEnsemble t = simulate_epr(tiny);
  for (int i = 0; i < 100; ++i) {
    CHECK(t.at(Var::x_a, i, kT) == e.at(Var::x_a, i, kT));
    CHECK(t.at(Var::p_b, i, 3) == e.at(Var::p_b, i, 3));
  }
}

TEST_CASE("unsqueezed sites carry no cross correlation") {
  SimConfig cfg;
  cfg.squeeze = SqueezeParams(0.0);
  cfg.g = 1.0;
  cfg.T = 1.0;
  cfg.dt = 0.05;
  cfg.n_traj = 50000;
  cfg.setting = Setting::xx;
  const TrajectoryEnsemble e = simulate_epr(cfg, 2);
  const int kT = e.n_times() - 1;
  const auto xa = column(e, Var::x_a, kT);
  const auto xb = column(e, Var::x_b, kT);
  const double corr = oracle::covariance(xa, xb) /
                      std::sqrt(oracle::variance(xa) * oracle::variance(xb));
  CHECK(std::abs(corr) < 5.0 / std::sqrt(static_cast<double>(cfg.n_traj)));
}

TEST_CASE("swapping the measured quadrature pair mirrors bit-exactly") {
  SimConfig cfg;
  cfg.squeeze = SqueezeParams(1.5);
  cfg.g = 1.0;
  cfg.T = 1.0;
  cfg.dt = 0.05;
  cfg.n_traj = 200;
  cfg.seed = 4242;
  cfg.setting = Setting::xx;
  const TrajectoryEnsemble exx = simulate_epr(cfg);
  cfg.setting = Setting::pp;
  const TrajectoryEnsemble epp = simulate_epr(cfg);

  CHECK(epp.directions[0] == Direction::forward);   // x_a
  CHECK(epp.directions[1] == Direction::backward);  // p_a
  REQUIRE(epp.times == exx.times);
  for (int i = 0; i < cfg.n_traj; ++i) {
    for (int k : {0, 7, 20}) {
      CHECK(epp.at(Var::p_a, i, k) == exx.at(Var::x_a, i, k));
      CHECK(epp.at(Var::p_b, i, k) == -exx.at(Var::x_b, i, k));
      CHECK(epp.at(Var::x_a, i, k) == exx.at(Var::p_a, i, k));
      CHECK(epp.at(Var::x_b, i, k) == -exx.at(Var::p_b, i, k));
    }
  }
}

TEST_CASE("single-mode request is rejected by the paired-mode entry point") {
  SimConfig cfg;
  cfg.setting = Setting::single_mode;
  cfg.x1 = 1.0;
  cfg.x2 = -1.0;
  CHECK_THROWS_AS(simulate_epr(cfg), std::invalid_argument);
}

TEST_CASE("mixed-pair run: factorized amplified marginal and inference") {
  SimConfig cfg;
  cfg.squeeze = SqueezeParams(2.0);
  cfg.g = 1.0;
  cfg.T = 2.0;
  cfg.dt = 0.02;
  cfg.n_traj = 30000;
  cfg.setting = Setting::xp;
  const TrajectoryEnsemble e = simulate_epr(cfg, 3);  // routed to mixed pair

  CHECK(e.directions[0] == Direction::backward);  // x_a amplified
  CHECK(e.directions[3] == Direction::backward);  // p_b amplified
  CHECK(e.directions[1] == Direction::forward);
  CHECK(e.directions[2] == Direction::forward);

  const int kT = e.n_times() - 1;
  const double v_term = 0.5 * (1.0 + std::exp(4.0) * std::cosh(4.0));
  const auto xa = column(e, Var::x_a, kT);
  const auto pb = column(e, Var::p_b, kT);
  const std::size_t n = xa.size();
  CHECK(std::abs(oracle::variance(xa) - v_term) <
        5.0 * oracle::se_variance(v_term, n));
  CHECK(std::abs(oracle::variance(pb) - v_term) <
        5.0 * oracle::se_variance(v_term, n));
  // Factorized marginal: the two amplified records are independent.
  CHECK(std::abs(oracle::covariance(xa, pb)) < 5.0 * v_term / std::sqrt(n));

  // Forward diagnostics start at the unamplified single-site variance.
  const auto pa0 = column(e, Var::p_a, 0);
  const double v_init = 0.5 * (1.0 + std::cosh(4.0));
  CHECK(std::abs(oracle::variance(pa0) - v_init) <
        5.0 * oracle::se_variance(v_init, n));

  // Inferred remote outcomes rescale the amplified record exactly.
  const std::vector<double> inferred = xp_inferred_p_a(e, 1.0);
  const int km = 50;
  CHECK(e.times[km] == doctest::Approx(1.0).epsilon(1e-12));
  for (int i : {0, 17, 29999}) {
    CHECK(inferred[static_cast<std::size_t>(i)] ==
          -e.at(Var::p_b, i, km) / std::exp(1.0));
  }
  CHECK_THROWS_AS(xp_inferred_p_a(e, 0.503), std::invalid_argument);

  SimConfig xx = cfg;
  xx.setting = Setting::xx;
  CHECK_THROWS_AS(xp_inferred_p_a(simulate_epr(xx), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_schrodinger(xx), std::invalid_argument);
}

TEST_CASE("estimate error statistics of the mixed-pair run match the analytic law") {
  // The per-trajectory additive error xi is linear in |p_B|/G, so its
  // ensemble mean equals xi evaluated at the analytic mean |p_B(T)|/G.
  SimConfig cfg;
  cfg.squeeze = SqueezeParams(2.0);
  cfg.g = 1.0;
  cfg.T = 2.0;
  cfg.dt = 0.02;
  cfg.n_traj = 20000;
  cfg.setting = Setting::xp;
  const TrajectoryEnsemble e = simulate_schrodinger(cfg, 3);
  const int kT = e.n_times() - 1;
  const double gain = std::exp(cfg.g * cfg.T);

  std::vector<double> xi(static_cast<std::size_t>(cfg.n_traj));
  for (int i = 0; i < cfg.n_traj; ++i) {
    xi[static_cast<std::size_t>(i)] =
        absolute_error_xi(cfg.squeeze, e.at(Var::p_b, i, kT) / gain);
  }
  // Var(p_B(T))/G^2 = (e^{-2gT} + cosh 2r)/2: the vacuum floor deflates to
  // nothing under the gain, leaving the bare quadrature variance.
  const double sigma_eff =
      std::sqrt(0.5 * (std::exp(-2.0 * cfg.g * cfg.T) + std::cosh(4.0)));
  const double a =
      std::numbers::sqrt2 / std::sqrt(std::cosh(4.0)) * cfg.squeeze.g0;
  const double expect_mean = a * sigma_eff * std::sqrt(2.0 / std::numbers::pi);
  const double se =
      a * sigma_eff * std::sqrt((1.0 - 2.0 / std::numbers::pi) /
                                static_cast<double>(cfg.n_traj));
  CHECK(std::abs(oracle::mean(xi) - expect_mean) < 5.0 * se);
}

TEST_CASE("superposition run: fractions, spreads, predetermination") {
  const TrajectoryEnsemble e =
      simulate_superposition(5.0, -5.0, 1.0, 2.0, 0.02, 4000, 12358);
  CHECK(e.single_mode());
  CHECK(e.x_b.empty());
  CHECK(e.p_b.empty());
  CHECK(e.directions[0] == Direction::backward);
  CHECK(e.directions[1] == Direction::forward);

  const int kT = e.n_times() - 1;
  const double amp = std::exp(2.0);
  const std::size_t n = 4000;

  // Terminal record: two symmetric bands at ±5 e^{gT} with the component
  // variance 1/2 + e^{2gT} v_e, v_e defaulting to (0.05 * 10)^2 = 0.25.
  std::vector<double> upper, lower;
  for (int i = 0; i < static_cast<int>(n); ++i) {
    const double x = e.at(Var::x_a, i, kT);
    (x > 0.0 ? upper : lower).push_back(x);
  }
  const double frac = static_cast<double>(upper.size()) / static_cast<double>(n);
  CHECK(std::abs(frac - 0.5) < 5.0 * std::sqrt(0.25 / static_cast<double>(n)));
  const double v_comp = 0.5 + amp * amp * 0.25;
  CHECK(v_comp == doctest::Approx(14.149537508286059).epsilon(1e-14));
  CHECK(std::abs(oracle::mean(upper) - 5.0 * amp) <
        5.0 * oracle::se_mean(v_comp, upper.size()));
  CHECK(std::abs(oracle::variance(upper) - v_comp) <
        5.0 * oracle::se_variance(v_comp, upper.size()));
  CHECK(std::abs(oracle::variance(lower) - v_comp) <
        5.0 * oracle::se_variance(v_comp, lower.size()));

  // Orthogonal-quadrature diagnostics start at 1/2 + 1/(4 v_e).
  const auto pa0 = column(e, Var::p_a, 0);
  CHECK(std::abs(oracle::variance(pa0) - 1.5) <
        5.0 * oracle::se_variance(1.5, n));

  // Band classification at the midpoint: equal fractions, no flips by T.
  const std::vector<double> centers{5.0 * std::exp(1.0), -5.0 * std::exp(1.0)};
  const BandReport report = classify_bands(e, 1.0, centers);
  CHECK(report.t_m == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.has_defect);
  CHECK(report.defect == 0.0);
  CHECK_FALSE(report.warning_unresolved);
  CHECK(report.fractions.size() == 2);
  CHECK(std::abs(report.fractions[0] - 0.5) < 0.05);
  CHECK(report.fractions[0] + report.fractions[1] ==
        doctest::Approx(1.0).epsilon(1e-12));
  for (double spread : report.residual_spread) {
    // In-band spread at t_m: e^{-2g(T-t_m)} v_comp + (1 - e^{-2g(T-t_m)})/2.
    const double v_m = std::exp(-2.0) * v_comp + (1.0 - std::exp(-2.0)) * 0.5;
    CHECK(spread == doctest::Approx(std::sqrt(v_m)).epsilon(0.1));
  }
}

TEST_CASE("superposition validation and defaults") {
  SimConfig cfg;
  cfg.setting = Setting::single_mode;
  cfg.x1 = 2.0;
  cfg.x2 = -2.0;
  CHECK(cfg.resolved_excess() == doctest::Approx(0.04).epsilon(1e-14));
  cfg.eigenstate_excess = 0.5;
  CHECK(cfg.resolved_excess() == 0.5);
  cfg.eigenstate_excess = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.eigenstate_excess = -1.0;
  cfg.x2 = 2.0;  // degenerate superposition
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.x2 = -2.0;
  CHECK_NOTHROW(cfg.validate());

  SimConfig xx = cfg;
  xx.setting = Setting::xx;
  CHECK_THROWS_AS(simulate_superposition(xx), std::invalid_argument);
}

TEST_CASE("band classification on a handcrafted ensemble") {
  TrajectoryEnsemble e;
  e.config.setting = Setting::xx;
  e.config.g = 1.0;
  e.config.T = 1.0;
  e.config.n_traj = 4;
  e.times = {0.0, 0.5, 1.0};
  const double s = std::exp(0.5);  // gain between t_m and T
  // Rows [traj][time]: chosen so trajectory 3 defects to the other band.
  e.x_a = {0.0, -1.05, -1.05 * s,
           0.0, -0.95, -0.95 * s,
           0.0, 1.02,  1.02 * s,
           0.0, 0.97,  -1.6 * s};

  const BandReport r = classify_bands(e, 0.5, {-1.0, 1.0});
  CHECK(r.band_assignments == std::vector<int>{0, 0, 1, 1});
  CHECK(r.fractions[0] == 0.5);
  CHECK(r.fractions[1] == 0.5);
  CHECK(r.residual_spread[0] ==
        doctest::Approx(std::sqrt(0.005)).epsilon(1e-12));
  CHECK(r.has_defect);
  CHECK(r.defect == 0.25);  // exactly one of four flips
  CHECK_FALSE(r.warning_unresolved);

  SUBCASE("classification exactly at the endpoint reports no defect") {
    const BandReport end = classify_bands(e, 1.0, {-1.0 * s, 1.0 * s});
    CHECK_FALSE(end.has_defect);
    CHECK(end.defect == 0.0);
  }

  SUBCASE("bands closer than four spreads raise the resolution flag") {
    const BandReport tight = classify_bands(e, 0.5, {-1.05, -0.8});
    CHECK(tight.warning_unresolved);
  }

  SUBCASE("single band: trivial fractions, no warning") {
    const BandReport one = classify_bands(e, 0.5, {0.0});
    CHECK(one.fractions == std::vector<double>{1.0});
    CHECK_FALSE(one.warning_unresolved);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(classify_bands(e, 0.25, {-1.0, 1.0}),
                    std::invalid_argument);  // off the grid
    CHECK_THROWS_AS(classify_bands(e, 0.5, {}), std::invalid_argument);
    CHECK_THROWS_AS(classify_bands(e, 0.5, {1.0, 1.0}), std::invalid_argument);
    TrajectoryEnsemble empty;
    CHECK_THROWS_AS(classify_bands(empty, 0.0, {1.0}), std::invalid_argument);
  }
}
