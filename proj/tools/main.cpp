#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eprwmr/config.hpp"
#include "eprwmr/io.hpp"
#include "eprwmr/runner.hpp"

namespace {

struct Flags {
  std::string mode_positional, mode, config, r, setting, scheme, case_label,
      figure, out;
  double g = 0, T = 0, gT = 0, dt = 0, Delta = 0, delta = 0, x1 = 0, x2 = 0,
         G = 0, Delta_p = 0, p_b = 0, t_m = 0, v_e = 0;
  int n = 0, threads = 1;
  std::uint64_t seed = 0;
  bool print_config = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "eprwmr — analytic tables, incompleteness-criterion reports, "
      "trajectory simulations and figure-data reproduction for two-mode "
      "squeezed-state amplification experiments"};
  app.get_formatter()->column_width(26);

  Flags f;
  // Positional spelling of the mode; named in caps so it cannot collide
  // with the --mode flag (which wins when both are given).
  app.add_option("MODE", f.mode_positional,
                 "analytics | error | criterion | simulate | reproduce");
  auto* o_config = app.add_option("--config", f.config, "Flat JSON config file (flags override it)");
  auto* o_mode = app.add_option("--mode", f.mode, "Mode (overrides the positional)");
  auto* o_r = app.add_option("--r", f.r, "Squeeze parameter(s), comma-separated (e.g. 1,2,3)");
  auto* o_g = app.add_option("--g", f.g, "Amplification rate (default 1)");
  auto* o_T = app.add_option("--T", f.T, "Total amplification time (default 2)");
  auto* o_gT = app.add_option("--gT", f.gT, "Shorthand for g=1, T=gT (exclusive with --g/--T)");
  auto* o_dt = app.add_option("--dt", f.dt, "Integrator step (default min(0.01/g, T/200))");
  auto* o_n = app.add_option("--n", f.n, "Trajectory count (default 40)");
  auto* o_seed = app.add_option("--seed", f.seed, "RNG seed (default 12358)");
  auto* o_setting = app.add_option("--setting", f.setting, "XX | PP | XP | single");
  auto* o_scheme = app.add_option("--scheme", f.scheme, "exact | euler (default exact)");
  auto* o_Delta = app.add_option("--Delta", f.Delta, "Bin width (quadrature units)");
  auto* o_delta = app.add_option("--delta", f.delta, "Bin overlap / distinctness half-scale");
  auto* o_x1 = app.add_option("--x1", f.x1, "Region threshold / superposition center 1");
  auto* o_x2 = app.add_option("--x2", f.x2, "Superposition center 2");
  auto* o_G = app.add_option("--G", f.G, "Amplification gain");
  auto* o_Delta_p = app.add_option("--Delta-p", f.Delta_p, "Readout resolution of the inferred quadrature");
  auto* o_p_b = app.add_option("--p-b", f.p_b, "Conditioning outcome p_B for the error budget");
  auto* o_t_m = app.add_option("--t-m", f.t_m, "Band-classification time (default T/2)");
  auto* o_v_e = app.add_option("--v-e", f.v_e, "Eigenstate smoothing excess variance");
  auto* o_case = app.add_option("--case", f.case_label, "Feasibility preset: I or II");
  auto* o_figure = app.add_option("--figure", f.figure,
                                  "p-distribution | error-xi | diagram-bins | "
                                  "bounds | sup-dynamics | epr1 | epr2");
  auto* o_out = app.add_option("--out", f.out, "Output directory (default $EPRWMR_OUT or .)");
  auto* o_threads = app.add_option("--threads", f.threads, "Worker threads (never changes results)");
  auto* o_print = app.add_flag("--print-config", f.print_config, "Echo the resolved config into sidecars");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  }

  try {
    eprwmr::ExperimentConfig c;
    if (o_config->count()) c = eprwmr::parse_config_file(f.config);
    if (!f.mode_positional.empty()) {
      c.mode = eprwmr::mode_from_string(f.mode_positional);
    }
    if (o_mode->count()) c.mode = eprwmr::mode_from_string(f.mode);
    if (o_r->count()) c.r_list = eprwmr::parse_r_list(f.r);
    if (o_g->count()) c.g = f.g;
    if (o_T->count()) c.T = f.T;
    if (o_gT->count()) c.gT = f.gT;
    if (o_dt->count()) c.dt = f.dt;
    if (o_n->count()) c.n = f.n;
    if (o_seed->count()) c.seed = f.seed;
    if (o_setting->count()) c.setting = f.setting;
    if (o_scheme->count()) c.scheme = f.scheme;
    if (o_Delta->count()) c.Delta = f.Delta;
    if (o_delta->count()) c.delta = f.delta;
    if (o_x1->count()) c.x1 = f.x1;
    if (o_x2->count()) c.x2 = f.x2;
    if (o_G->count()) c.G = f.G;
    if (o_Delta_p->count()) c.Delta_p = f.Delta_p;
    if (o_p_b->count()) c.p_b = f.p_b;
    if (o_t_m->count()) c.t_m = f.t_m;
    if (o_v_e->count()) c.v_e = f.v_e;
    if (o_case->count()) c.case_label = f.case_label;
    if (o_figure->count()) c.figure = f.figure;
    if (o_out->count()) c.out = f.out;
    if (o_threads->count()) c.threads = f.threads;
    if (o_print->count()) c.print_config = true;

    eprwmr::run_experiment(c, std::cout);
    return 0;
  } catch (const eprwmr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const eprwmr::WriteError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric-domain error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
