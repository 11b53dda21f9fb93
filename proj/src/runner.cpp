#include "eprwmr/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <numbers>
#include <string>
#include <vector>

#include "eprwmr/criterion.hpp"
#include "eprwmr/fbsde.hpp"
#include "eprwmr/gaussian.hpp"
#include "eprwmr/io.hpp"
#include "eprwmr/phase_space.hpp"
#include "eprwmr/schrodinger.hpp"

namespace eprwmr {
namespace {

using json = nlohmann::ordered_json;

/// Collects written artifact names and prints the per-artifact summary line.
struct ArtifactSink {
  std::filesystem::path dir;
  std::ostream& log;
  std::vector<std::string> names;

  void write_csv(const std::string& name, const CsvTable& table) {
    const auto path = dir / name;
    write_text_file(path, to_csv(table));
    log << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
    names.push_back(name);
  }

  void write_raw_csv(const std::string& name, const std::string& text,
                     std::size_t rows) {
    const auto path = dir / name;
    write_text_file(path, text);
    log << "wrote " << path.string() << " (" << rows << " rows)\n";
    names.push_back(name);
  }

  void write_json(const std::string& name, const json& doc,
                  bool record = true) {
    const auto path = dir / name;
    write_text_file(path, doc.dump(2) + "\n");
    log << "wrote " << path.string() << "\n";
    if (record) names.push_back(name);
  }
};

json base_meta(const ExperimentConfig& c) {
  json meta;
  meta["mode"] = to_string(c.mode);
  if (c.figure) meta["figure"] = *c.figure;
  meta["parameters"] = json::object();
  meta["artifacts"] = json::array();
  return meta;
}

void finish_meta(const ExperimentConfig& c, ArtifactSink& sink, json meta,
                 const std::string& name) {
  meta["artifacts"] = sink.names;
  if (c.print_config) {
    meta["resolved_config"] = json::parse(resolved_config_json(c));
  }
  sink.write_json(name, meta, /*record=*/false);
}

std::vector<double> r_or_default(const ExperimentConfig& c,
                                 std::vector<double> def) {
  return c.r_list.empty() ? std::move(def) : c.r_list;
}

double single_r(const ExperimentConfig& c, double def) {
  if (c.r_list.empty()) return def;
  if (c.r_list.size() > 1) {
    throw ConfigError(std::string("mode '") + to_string(c.mode) +
                      "' takes a single r value");
  }
  return c.r_list.front();
}

struct TimeSpec {
  double g;
  double T;
};

TimeSpec resolve_time(const ExperimentConfig& c) {
  if (c.gT) {
    if (c.g || c.T) {
      throw ConfigError("give either gT or g/T, not both");
    }
    return {1.0, *c.gT};
  }
  return {c.g.value_or(1.0), c.T.value_or(2.0)};
}

Scheme resolve_scheme(const ExperimentConfig& c) {
  if (!c.scheme) return Scheme::exact;
  if (*c.scheme == "exact") return Scheme::exact;
  if (*c.scheme == "euler" || *c.scheme == "euler_maruyama") {
    return Scheme::euler_maruyama;
  }
  throw ConfigError("unknown scheme '" + *c.scheme +
                    "' (expected exact or euler)");
}

/// "0.5" -> "0p5", "2" -> "2": filename-safe squeeze tag.
std::string r_slug(double r) {
  std::string s = fmt9(r);
  for (char& ch : s) {
    if (ch == '.') ch = 'p';
    if (ch == '-') ch = 'm';
  }
  return s;
}

double gaussian_pdf(double x, double mean, double variance) {
  const double z = (x - mean) / std::sqrt(variance);
  return std::exp(-0.5 * z * z) /
         std::sqrt(2.0 * std::numbers::pi * variance);
}

// ---------------------------------------------------------------------------
// analytics: closed-form squeeze/inference/boundary table per r.
// ---------------------------------------------------------------------------
void run_analytics(const ExperimentConfig& c, ArtifactSink& sink) {
  const std::vector<double> rs = r_or_default(c, {0.5, 1.0, 2.0, 3.0});
  const TimeSpec ts = resolve_time(c);
  const double gT = ts.g * ts.T;

  CsvTable table;
  table.header = {"r",           "eta",         "g0",
                  "sigma_x_sq",  "n_bar",       "inference_var",
                  "epr_product", "epr_satisfied", "xi_at_mean_p",
                  "q_var_sum_x", "q_var_diff_x"};
  for (double r : rs) {
    const SqueezeParams p(r);
    const double dinf_sq = inference_variance_optimal(p);
    const double dinf = std::sqrt(dinf_sq);
    const CriterionVerdict verdict = epr_criterion(dinf, dinf);
    const double xi_mean =
        std::sqrt(2.0 / std::numbers::pi) * std::tanh(2.0 * r);
    const SectorGaussian q = q_sector_variances(p, gT, Sector::x);
    table.rows.push_back({fmt9(r), fmt9(p.eta), fmt9(p.g0),
                          fmt9(quadrature_variance(p)),
                          fmt9(mean_photon_number(p)), fmt9(dinf_sq),
                          fmt9(verdict.product),
                          verdict.satisfied ? "1" : "0", fmt9(xi_mean),
                          fmt9(q.variance_sum), fmt9(q.variance_diff)});
  }
  sink.write_csv("analytics.csv", table);

  json meta = base_meta(c);
  meta["parameters"]["r"] = rs;
  meta["parameters"]["gT"] = gT;
  meta["reference_values"]["epr_threshold"] = 0.5;
  meta["reference_values"]["xi_large_r_limit"] =
      std::sqrt(2.0 / std::numbers::pi);
  finish_meta(c, sink, std::move(meta), "analytics.meta.json");
}

// ---------------------------------------------------------------------------
// error: estimate-vs-truth budget for the X²+P² measurement at chosen p_B.
// ---------------------------------------------------------------------------
void run_error(const ExperimentConfig& c, ArtifactSink& sink) {
  const std::vector<double> rs = r_or_default(c, {1.0, 2.0, 3.0});

  CsvTable table;
  table.header = {"r",
                  "p_b",
                  "p_estimate",
                  "absolute_error_xi",
                  "relative_error",
                  "xi_at_mean_p",
                  "residual_mean",
                  "residual_variance",
                  "homodyne_lhs",
                  "homodyne_rhs"};
  for (double r : rs) {
    const SqueezeParams p(r);
    const double sigma_p = std::sqrt(quadrature_variance(p));
    const double p_b =
        c.p_b ? *c.p_b : sigma_p * std::sqrt(2.0 / std::numbers::pi);
    const ErrorBudget budget = error_budget(p, p_b);
    const double xi_mean =
        std::sqrt(2.0 / std::numbers::pi) * std::tanh(2.0 * r);
    const Gaussian1D residual = p_squared_residual_moments(p, p.g0);
    const HomodyneSumCheck homodyne = homodyne_sum_check(p, 1.0);
    table.rows.push_back(
        {fmt9(r), fmt9(budget.p_b), fmt9(budget.p_estimate),
         fmt9(budget.absolute_error_xi), fmt9(budget.relative_error),
         fmt9(xi_mean), fmt9(residual.mean), fmt9(residual.variance),
         fmt9(homodyne.lhs), fmt9(homodyne.rhs)});
  }
  sink.write_csv("error_budget.csv", table);

  json meta = base_meta(c);
  meta["parameters"]["r"] = rs;
  if (c.p_b) meta["parameters"]["p_b"] = *c.p_b;
  meta["reference_values"]["xi_large_r_limit"] =
      std::sqrt(2.0 / std::numbers::pi);
  finish_meta(c, sink, std::move(meta), "error_budget.meta.json");
}

// ---------------------------------------------------------------------------
// criterion: incompleteness report, two-region or binned-amplified path.
// ---------------------------------------------------------------------------
json report_to_json(const CriterionReport& report) {
  json doc;
  doc["sigma_real"] = report.sigma_real;
  doc["sigma_inf"] = report.sigma_inf;
  doc["product"] = report.product;
  doc["satisfied"] = report.satisfied;
  doc["distinctness_level"] = report.distinctness_level;
  doc["method_tag"] = to_string(report.method_tag);
  return doc;
}

void run_criterion(const ExperimentConfig& c, ArtifactSink& sink) {
  const double r = single_r(c, 2.0);
  const SqueezeParams p(r);
  const bool binned = c.case_label || c.Delta || c.G || c.Delta_p;

  json meta = base_meta(c);
  meta["parameters"]["r"] = r;

  CriterionReport report;
  if (binned) {
    double Delta = 0.0, delta = 2.0, G = 0.0, Delta_p = 0.0;
    if (c.case_label) {
      if (*c.case_label == "I") {
        Delta = 750.0;
        delta = 2.0;
        G = 500.0;
        Delta_p = 5.0;
      } else if (*c.case_label == "II") {
        Delta = 18.0;
        delta = 2.0;
        G = 12.0;
        Delta_p = 2.0;
      } else {
        throw ConfigError("unknown case '" + *c.case_label +
                          "' (expected I or II)");
      }
      meta["parameters"]["case"] = *c.case_label;
    } else if (!c.Delta || !c.G || !c.Delta_p) {
      throw ConfigError(
          "binned criterion needs --Delta, --G and --Delta-p (or --case)");
    }
    if (c.Delta) Delta = *c.Delta;
    if (c.delta) delta = *c.delta;
    if (c.G) G = *c.G;
    if (c.Delta_p) Delta_p = *c.Delta_p;

    const BinningScheme scheme(Delta, delta, c.x1.value_or(0.0), G);
    const double sigma_real = sigma_real_binned(scheme);
    const AmplifiedInferenceBound bound =
        sigma_inf_amplified(p, Delta_p, G, /*ideal=*/false);
    report = incompleteness_check(sigma_real, bound.value, 2.0 * delta,
                                  MethodTag::binned_amplified);
    const FeasibilityRecord feas = feasibility_case(p, G, Delta, Delta_p, delta);

    meta["parameters"]["Delta"] = Delta;
    meta["parameters"]["delta"] = delta;
    meta["parameters"]["G"] = G;
    meta["parameters"]["Delta_p"] = Delta_p;
    meta["feasibility"]["lhs"] = feas.lhs;
    meta["feasibility"]["rhs"] = feas.rhs;
    meta["feasibility"]["feasible"] = feas.feasible;
    meta["feasibility"]["case1_lhs"] = feas.case1_lhs;
    meta["feasibility"]["case1_rhs"] = feas.case1_rhs;
    meta["feasibility"]["case1_feasible"] = feas.case1_feasible;
    meta["reference_values"]["large_r_bound_valid"] = bound.large_r_valid;
    meta["reference_values"]["sigma_inf_exact"] = bound.exact_value;
  } else {
    const double x1 = c.x1.value_or(0.0);
    const double sigma_real = sigma_real_two_region(p, x1);
    const double sigma_inf =
        sigma_inf_amplified(p, 0.0, 1.0, /*ideal=*/true).value;
    report = incompleteness_check(sigma_real, sigma_inf, 2.0 * x1,
                                  MethodTag::two_region);
    meta["parameters"]["x1"] = x1;
    meta["reference_values"]["zero_x1_product"] =
        0.5 * std::sqrt(1.0 - 2.0 / std::numbers::pi);
  }

  sink.write_json("criterion_report.json", report_to_json(report));
  finish_meta(c, sink, std::move(meta), "criterion_report.meta.json");
}

// ---------------------------------------------------------------------------
// simulate: one trajectory ensemble (+ band report for the single mode).
// ---------------------------------------------------------------------------
SimConfig build_sim_config(const ExperimentConfig& c) {
  const TimeSpec ts = resolve_time(c);
  SimConfig sim;
  sim.squeeze = SqueezeParams(single_r(c, 2.0));
  sim.g = ts.g;
  sim.T = ts.T;
  sim.dt = c.dt.value_or(0.0);
  sim.n_traj = c.n.value_or(40);
  sim.seed = c.seed.value_or(kDefaultSeed);
  sim.setting = c.setting ? setting_from_string(*c.setting) : Setting::xx;
  sim.scheme = resolve_scheme(c);
  if (sim.setting == Setting::single_mode) {
    sim.x1 = c.x1.value_or(5.0);
    sim.x2 = c.x2.value_or(-5.0);
    if (c.v_e) sim.eigenstate_excess = *c.v_e;
  }
  return sim;
}

TrajectoryEnsemble run_sim(const SimConfig& sim, int threads) {
  switch (sim.setting) {
    case Setting::xx:
    case Setting::pp:
      return simulate_epr(sim, threads);
    case Setting::xp:
      return simulate_schrodinger(sim, threads);
    case Setting::single_mode:
      return simulate_superposition(sim, threads);
  }
  throw ConfigError("unknown setting");
}

json band_report_to_json(const BandReport& report) {
  json doc;
  doc["t_m"] = report.t_m;
  doc["band_centers"] = report.band_centers;
  doc["fractions"] = report.fractions;
  doc["residual_spread"] = report.residual_spread;
  doc["defect"] = report.defect;
  doc["has_defect"] = report.has_defect;
  doc["warning_unresolved"] = report.warning_unresolved;
  doc["band_assignments"] = report.band_assignments;
  return doc;
}

void describe_sim(json& params, const SimConfig& sim) {
  params["r"] = sim.squeeze.r;
  params["g"] = sim.g;
  params["T"] = sim.T;
  params["dt"] = sim.resolved_dt();
  params["n"] = sim.n_traj;
  params["setting"] = to_string(sim.setting);
  params["scheme"] = sim.scheme == Scheme::exact ? "exact" : "euler_maruyama";
  if (sim.setting == Setting::single_mode) {
    params["x1"] = sim.x1;
    params["x2"] = sim.x2;
    params["v_e"] = sim.resolved_excess();
  }
}

void run_simulate(const ExperimentConfig& c, ArtifactSink& sink) {
  const SimConfig sim = build_sim_config(c);
  const TrajectoryEnsemble ensemble = run_sim(sim, c.threads);
  sink.write_raw_csv("trajectories.csv", trajectory_csv(ensemble),
                     static_cast<std::size_t>(ensemble.n_times()) *
                         static_cast<std::size_t>(sim.n_traj));

  json meta = base_meta(c);
  describe_sim(meta["parameters"], sim);
  meta["seed"] = sim.seed;

  if (sim.setting == Setting::single_mode) {
    const double t_m = c.t_m.value_or(0.5 * sim.T);
    const double gain = std::exp(sim.g * t_m);
    const BandReport report =
        classify_bands(ensemble, t_m, {sim.x1 * gain, sim.x2 * gain});
    sink.write_json("band_report.json", band_report_to_json(report));
    meta["parameters"]["t_m"] = t_m;
  }
  finish_meta(c, sink, std::move(meta), "trajectories.meta.json");
}

// ---------------------------------------------------------------------------
// reproduce: figure-data artifact sets.
// ---------------------------------------------------------------------------
void figure_p_distribution(const ExperimentConfig& c, ArtifactSink& sink) {
  const std::vector<double> rs = r_or_default(c, {0.5, 1.0, 2.0, 3.0});
  CsvTable table;
  table.header = {"r", "p", "density"};
  json refs;
  for (double r : rs) {
    const SqueezeParams p(r);
    const double var = quadrature_variance(p);
    const double sigma = std::sqrt(var);
    for (int k = 0; k <= 200; ++k) {
      const double v = -4.0 * sigma + 8.0 * sigma * k / 200.0;
      table.rows.push_back({fmt9(r), fmt9(v), fmt9(gaussian_pdf(v, 0.0, var))});
    }
    refs["sigma_p_r" + r_slug(r)] = sigma;
  }
  sink.write_csv("p_distribution.csv", table);

  json meta = base_meta(c);
  meta["parameters"]["r"] = rs;
  meta["reference_values"] = refs;
  finish_meta(c, sink, std::move(meta), "p_distribution.meta.json");
}

void figure_error_xi(const ExperimentConfig& c, ArtifactSink& sink) {
  const std::vector<double> rs = r_or_default(c, {1.0, 2.0, 3.0});
  CsvTable table;
  table.header = {"r", "p_b", "xi", "relative_error", "p_density",
                  "xi_density"};
  json refs;
  for (double r : rs) {
    const SqueezeParams p(r);
    const double var = quadrature_variance(p);
    const double sigma = std::sqrt(var);
    // xi = a·|p_B| with half-normal |p_B|; slope a sets the xi density.
    const double a = std::sqrt(2.0 / std::cosh(2.0 * r)) * p.g0;
    for (int k = 1; k <= 200; ++k) {
      const double p_b = 4.0 * sigma * k / 200.0;
      const ErrorBudget budget = error_budget(p, p_b);
      const double xi_density =
          2.0 * gaussian_pdf(budget.absolute_error_xi / a, 0.0, var) / a;
      table.rows.push_back({fmt9(r), fmt9(p_b),
                            fmt9(budget.absolute_error_xi),
                            fmt9(budget.relative_error),
                            fmt9(2.0 * gaussian_pdf(p_b, 0.0, var)),
                            fmt9(xi_density)});
    }
    refs["xi_at_mean_p_r" + r_slug(r)] =
        std::sqrt(2.0 / std::numbers::pi) * std::tanh(2.0 * r);
  }
  refs["xi_large_r_limit"] = std::sqrt(2.0 / std::numbers::pi);
  sink.write_csv("error_xi.csv", table);

  json meta = base_meta(c);
  meta["parameters"]["r"] = rs;
  meta["reference_values"] = refs;
  finish_meta(c, sink, std::move(meta), "error_xi.meta.json");
}

void figure_diagram_bins(const ExperimentConfig& c, ArtifactSink& sink) {
  const double r = single_r(c, 2.0);
  const SqueezeParams p(r);
  const double var = quadrature_variance(p);
  const double sigma = std::sqrt(var);
  const double x1 = c.x1.value_or(0.25 * sigma);
  const RegionProbabilities probs = region_probabilities(p, x1);

  CsvTable table;
  table.header = {"x", "density", "region"};
  for (int k = 0; k <= 400; ++k) {
    const double x = -4.0 * sigma + 8.0 * sigma * k / 400.0;
    const char* region = x < -x1 ? "minus" : (x > x1 ? "plus" : "zero");
    table.rows.push_back({fmt9(x), fmt9(gaussian_pdf(x, 0.0, var)), region});
  }
  sink.write_csv("diagram_bins.csv", table);

  json meta = base_meta(c);
  meta["parameters"]["r"] = r;
  meta["parameters"]["x1"] = x1;
  meta["reference_values"]["sigma_x"] = sigma;
  meta["reference_values"]["p_plus"] = probs.p_plus;
  meta["reference_values"]["p_zero"] = probs.p_zero;
  meta["reference_values"]["p_minus"] = probs.p_minus;
  finish_meta(c, sink, std::move(meta), "diagram_bins.meta.json");
}

void figure_bounds(const ExperimentConfig& c, ArtifactSink& sink) {
  const std::vector<double> rs = r_or_default(c, {2.0, 3.0});
  CsvTable table;
  table.header = {"r", "x1_over_sigma", "x1", "upper_bound", "sigma_real"};
  json refs;
  for (double r : rs) {
    const SqueezeParams p(r);
    const double sigma = std::sqrt(quadrature_variance(p));
    for (int k = 0; k <= 150; ++k) {
      const double u = k == 0 ? 1e-4 : k / 50.0;
      const double x1 = u * sigma;
      const double ub = upper_bound_UB(p, x1);
      table.rows.push_back(
          {fmt9(r), fmt9(u), fmt9(x1), fmt9(ub), fmt9(std::sqrt(ub))});
    }
    const std::string tag = "_r" + r_slug(r);
    refs["half_gaussian_variance" + tag] = half_gaussian_variance(sigma);
    refs["rounded_036_sigma_sq" + tag] = 0.36 * sigma * sigma;
    refs["sigma_x_sq" + tag] = sigma * sigma;
  }
  refs["marker_x1"] = 1.0 / std::sqrt(2.0);
  sink.write_csv("bounds.csv", table);

  json meta = base_meta(c);
  meta["parameters"]["r"] = rs;
  meta["reference_values"] = refs;
  finish_meta(c, sink, std::move(meta), "bounds.meta.json");
}

void figure_sup_dynamics(const ExperimentConfig& c, ArtifactSink& sink) {
  struct Case {
    const char* tag;
    double x1, x2, T, t_m;
  };
  const Case cases[] = {{"a", 5.0, -5.0, 2.0, 1.0}, {"b", 1.0, -1.0, 3.0, 1.5}};

  json meta = base_meta(c);
  for (const Case& k : cases) {
    SimConfig sim;
    sim.setting = Setting::single_mode;
    sim.g = 1.0;
    sim.T = k.T;
    sim.x1 = k.x1;
    sim.x2 = k.x2;
    sim.n_traj = c.n.value_or(40);
    sim.seed = c.seed.value_or(kDefaultSeed);
    sim.dt = c.dt.value_or(0.0);
    const TrajectoryEnsemble ensemble = simulate_superposition(sim, c.threads);
    sink.write_raw_csv(std::string("sup_dynamics_") + k.tag + ".csv",
                       trajectory_csv(ensemble),
                       static_cast<std::size_t>(ensemble.n_times()) *
                           static_cast<std::size_t>(sim.n_traj));
    const double gain = std::exp(sim.g * k.t_m);
    const BandReport report =
        classify_bands(ensemble, k.t_m, {k.x1 * gain, k.x2 * gain});
    sink.write_json(std::string("band_report_") + k.tag + ".json",
                    band_report_to_json(report));

    json& params = meta["parameters"][std::string("case_") + k.tag];
    params = json::object();
    params["x1"] = k.x1;
    params["x2"] = k.x2;
    params["gT"] = sim.g * sim.T;
    params["t_m"] = k.t_m;
    params["n"] = sim.n_traj;
  }
  meta["seed"] = c.seed.value_or(kDefaultSeed);
  finish_meta(c, sink, std::move(meta), "sup_dynamics.meta.json");
}

void figure_epr_pair(const ExperimentConfig& c, ArtifactSink& sink,
                     Setting setting, const std::string& stem) {
  const std::vector<double> rs = r_or_default(c, {2.0, 0.5});
  const TimeSpec ts = resolve_time(c);

  json meta = base_meta(c);
  json refs;
  for (double r : rs) {
    SimConfig sim;
    sim.squeeze = SqueezeParams(r);
    sim.setting = setting;
    sim.g = ts.g;
    sim.T = ts.T;
    sim.n_traj = c.n.value_or(40);
    sim.seed = c.seed.value_or(kDefaultSeed);
    sim.dt = c.dt.value_or(0.0);
    const TrajectoryEnsemble ensemble = run_sim(sim, c.threads);
    sink.write_raw_csv(stem + "_r" + r_slug(r) + ".csv",
                       trajectory_csv(ensemble),
                       static_cast<std::size_t>(ensemble.n_times()) *
                           static_cast<std::size_t>(sim.n_traj));
    if (setting == Setting::xx) {
      const SectorGaussian q =
          q_sector_variances(sim.squeeze, sim.g * sim.T, Sector::x);
      refs["terminal_var_x_diff_r" + r_slug(r)] = q.variance_diff;
      refs["terminal_var_x_sum_r" + r_slug(r)] = q.variance_sum;
    } else {
      const double cosh2r = std::cosh(2.0 * r);
      refs["terminal_var_single_site_r" + r_slug(r)] =
          0.5 * (1.0 + std::exp(2.0 * sim.g * sim.T) * cosh2r);
    }
  }
  meta["parameters"]["r"] = rs;
  meta["parameters"]["g"] = ts.g;
  meta["parameters"]["T"] = ts.T;
  meta["parameters"]["n"] = c.n.value_or(40);
  meta["parameters"]["setting"] = to_string(setting);
  meta["seed"] = c.seed.value_or(kDefaultSeed);
  meta["reference_values"] = refs;
  finish_meta(c, sink, std::move(meta), stem + ".meta.json");
}

void run_reproduce(const ExperimentConfig& c, ArtifactSink& sink) {
  static const char* kValid =
      "p-distribution, error-xi, diagram-bins, bounds, sup-dynamics, epr1, "
      "epr2";
  if (!c.figure) {
    throw ConfigError(std::string("reproduce needs --figure (valid: ") +
                      kValid + ")");
  }
  const std::string& id = *c.figure;
  if (id == "p-distribution") {
    figure_p_distribution(c, sink);
  } else if (id == "error-xi") {
    figure_error_xi(c, sink);
  } else if (id == "diagram-bins") {
    figure_diagram_bins(c, sink);
  } else if (id == "bounds") {
    figure_bounds(c, sink);
  } else if (id == "sup-dynamics") {
    figure_sup_dynamics(c, sink);
  } else if (id == "epr1") {
    figure_epr_pair(c, sink, Setting::xx, "epr1");
  } else if (id == "epr2") {
    figure_epr_pair(c, sink, Setting::xp, "epr2");
  } else {
    throw ConfigError("unknown figure '" + id + "' (valid: " + kValid + ")");
  }
}

}  // namespace

namespace {
std::filesystem::path resolve_out_dir(const ExperimentConfig& c) {
  if (c.out) return *c.out;
  if (const char* env = std::getenv("EPRWMR_OUT"); env && *env) return env;
  return ".";
}
}  // namespace

void run_experiment(const ExperimentConfig& c, std::ostream& log) {
  if (c.threads < 1) throw ConfigError("threads must be >= 1");
  for (double r : c.r_list) {
    (void)SqueezeParams(r);  // reject out-of-range r before any dispatch
  }
  ArtifactSink sink{resolve_out_dir(c), log, {}};
  switch (c.mode) {
    case Mode::analytics: run_analytics(c, sink); break;
    case Mode::error: run_error(c, sink); break;
    case Mode::criterion: run_criterion(c, sink); break;
    case Mode::simulate: run_simulate(c, sink); break;
    case Mode::reproduce: run_reproduce(c, sink); break;
  }
}

}  // namespace eprwmr
