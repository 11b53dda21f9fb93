#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eprwmr/criterion.hpp"
#include "eprwmr/fbsde.hpp"
#include "eprwmr/gaussian.hpp"
#include "eprwmr/io.hpp"
#include "eprwmr/phase_space.hpp"
#include "eprwmr/schrodinger.hpp"

namespace py = pybind11;
using namespace eprwmr;

PYBIND11_MODULE(_eprwmr, m) {
  m.doc() =
      "Two-mode squeezed-state quadrature analytics, the incompleteness "
      "criterion, and the forward-backward amplification trajectory "
      "simulator.";
  m.attr("DEFAULT_SEED") = kDefaultSeed;
  m.attr("VACUUM_VARIANCE") = kVacuumVariance;
  m.attr("MAX_SQUEEZE") = kMaxSqueeze;

  // --- core Gaussian toolbox ------------------------------------------------
  py::class_<SqueezeParams>(m, "SqueezeParams")
      .def(py::init<double>(), py::arg("r"))
      .def_readonly("r", &SqueezeParams::r)
      .def_readonly("eta", &SqueezeParams::eta)
      .def_readonly("g0", &SqueezeParams::g0)
      .def_readonly("sigma_sq", &SqueezeParams::sigma_sq)
      .def("__repr__", [](const SqueezeParams& p) {
        return "SqueezeParams(r=" + std::to_string(p.r) + ")";
      });

  py::class_<Gaussian1D>(m, "Gaussian1D")
      .def(py::init<double, double>(), py::arg("mean"), py::arg("variance"))
      .def_readonly("mean", &Gaussian1D::mean)
      .def_readonly("variance", &Gaussian1D::variance)
      .def("pdf", &Gaussian1D::pdf)
      .def("sample", &Gaussian1D::sample);

  py::class_<Gaussian2D>(m, "Gaussian2D")
      .def_readonly("mean", &Gaussian2D::mean)
      .def_readonly("cov", &Gaussian2D::cov)
      .def("pdf", &Gaussian2D::pdf)
      .def("marginal", &Gaussian2D::marginal)
      .def("conditional", &Gaussian2D::conditional)
      .def("sample", &Gaussian2D::sample);

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
           py::arg("stream"))
      .def("uniform", &RngStream::uniform)
      .def("normal", &RngStream::normal);

  py::class_<CriterionVerdict>(m, "CriterionVerdict")
      .def_readonly("product", &CriterionVerdict::product)
      .def_readonly("satisfied", &CriterionVerdict::satisfied);

  m.def("quadrature_variance", &quadrature_variance, py::arg("p"));
  m.def("inference_variance_optimal", &inference_variance_optimal,
        py::arg("p"));
  m.def("inference_variance_general", &inference_variance_general,
        py::arg("p"), py::arg("g"));
  m.def("conditional_distribution_x", &conditional_distribution_x,
        py::arg("p"), py::arg("x_b"));
  m.def("conditional_distribution_p", &conditional_distribution_p,
        py::arg("p"), py::arg("p_b"));
  m.def("joint_distribution_x", &joint_distribution_x, py::arg("p"));
  m.def("joint_distribution_p", &joint_distribution_p, py::arg("p"));
  m.def("mean_photon_number", &mean_photon_number, py::arg("p"));
  m.def("epr_criterion", &epr_criterion, py::arg("dinf_x"), py::arg("dinf_p"));

  // --- remote-estimate error budget -----------------------------------------
  py::class_<ErrorBudget>(m, "ErrorBudget")
      .def_readonly("p_b", &ErrorBudget::p_b)
      .def_readonly("p_estimate", &ErrorBudget::p_estimate)
      .def_readonly("relative_error", &ErrorBudget::relative_error)
      .def_readonly("absolute_error_xi", &ErrorBudget::absolute_error_xi);

  py::class_<HomodyneSumCheck>(m, "HomodyneSumCheck")
      .def_readonly("lhs", &HomodyneSumCheck::lhs)
      .def_readonly("rhs", &HomodyneSumCheck::rhs)
      .def("gap", &HomodyneSumCheck::gap)
      .def("relative_gap", &HomodyneSumCheck::relative_gap);

  m.def("relative_error", &relative_error, py::arg("p"), py::arg("p_b"));
  m.def("absolute_error_xi", &absolute_error_xi, py::arg("p"), py::arg("p_b"));
  m.def("error_budget", &error_budget, py::arg("p"), py::arg("p_b"));
  m.def("halfgauss_mean_abs", &halfgauss_mean_abs, py::arg("sigma"));
  m.def("homodyne_sum_check", &homodyne_sum_check, py::arg("p"),
        py::arg("e_scale"));
  m.def("p_squared_residual_moments", &p_squared_residual_moments,
        py::arg("p"), py::arg("g"));

  // --- incompleteness criterion ----------------------------------------------
  py::class_<BinningScheme>(m, "BinningScheme")
      .def(py::init<double, double, double, double>(), py::arg("Delta"),
           py::arg("delta"), py::arg("x1"), py::arg("G"))
      .def_readonly("bin_width_Delta", &BinningScheme::bin_width_Delta)
      .def_readonly("overlap_delta", &BinningScheme::overlap_delta)
      .def_readonly("threshold_x1", &BinningScheme::threshold_x1)
      .def_readonly("gain_G", &BinningScheme::gain_G);

  py::enum_<MethodTag>(m, "MethodTag")
      .value("two_region", MethodTag::two_region)
      .value("binned_amplified", MethodTag::binned_amplified)
      .value("conditional_mc", MethodTag::conditional_mc);

  py::class_<CriterionReport>(m, "CriterionReport")
      .def_readonly("sigma_real", &CriterionReport::sigma_real)
      .def_readonly("sigma_inf", &CriterionReport::sigma_inf)
      .def_readonly("product", &CriterionReport::product)
      .def_readonly("satisfied", &CriterionReport::satisfied)
      .def_readonly("distinctness_level", &CriterionReport::distinctness_level)
      .def_readonly("method_tag", &CriterionReport::method_tag);

  py::class_<RegionProbabilities>(m, "RegionProbabilities")
      .def_readonly("p_minus", &RegionProbabilities::p_minus)
      .def_readonly("p_zero", &RegionProbabilities::p_zero)
      .def_readonly("p_plus", &RegionProbabilities::p_plus);

  py::class_<AmplifiedInferenceBound>(m, "AmplifiedInferenceBound")
      .def_readonly("value", &AmplifiedInferenceBound::value)
      .def_readonly("exact_value", &AmplifiedInferenceBound::exact_value)
      .def_readonly("large_r_valid", &AmplifiedInferenceBound::large_r_valid);

  py::class_<FeasibilityRecord>(m, "FeasibilityRecord")
      .def_readonly("lhs", &FeasibilityRecord::lhs)
      .def_readonly("rhs", &FeasibilityRecord::rhs)
      .def_readonly("feasible", &FeasibilityRecord::feasible)
      .def_readonly("case1_lhs", &FeasibilityRecord::case1_lhs)
      .def_readonly("case1_rhs", &FeasibilityRecord::case1_rhs)
      .def_readonly("case1_feasible", &FeasibilityRecord::case1_feasible);

  m.def("region_probabilities", &region_probabilities, py::arg("p"),
        py::arg("x1"));
  m.def("half_gaussian_variance", &half_gaussian_variance, py::arg("sigma"));
  m.def("upper_tail_first_moment", &upper_tail_first_moment, py::arg("p"),
        py::arg("x1"));
  m.def("upper_tail_second_moment", &upper_tail_second_moment, py::arg("p"),
        py::arg("x1"));
  m.def("upper_bound_UB", &upper_bound_UB, py::arg("p"), py::arg("x1"));
  m.def("sigma_real_two_region", &sigma_real_two_region, py::arg("p"),
        py::arg("x1"));
  m.def("sigma_real_binned", &sigma_real_binned, py::arg("scheme"));
  m.def("sigma_inf_amplified", &sigma_inf_amplified, py::arg("p"),
        py::arg("delta_p"), py::arg("gain"), py::arg("ideal"));
  m.def(
      "sigma_inf_conditional",
      [](const std::vector<std::pair<double, double>>& pairs,
         double bin_width) {
        std::vector<PairedSample> samples;
        samples.reserve(pairs.size());
        for (const auto& [a, b] : pairs) samples.push_back({a, b});
        return sigma_inf_conditional(samples, bin_width);
      },
      py::arg("samples"), py::arg("bin_width"),
      "samples: list of (p_a, p_b) pairs");
  m.def("incompleteness_check", &incompleteness_check, py::arg("sigma_real"),
        py::arg("sigma_inf"), py::arg("distinctness"),
        py::arg("tag") = MethodTag::two_region);
  m.def("feasibility_case", &feasibility_case, py::arg("p"), py::arg("G"),
        py::arg("Delta"), py::arg("Delta_p"), py::arg("delta"));
  m.def(
      "mixture_product_lemma_check",
      [](const std::vector<std::tuple<double, double, double>>& mixture) {
        std::vector<MixtureComponent> comps;
        comps.reserve(mixture.size());
        for (const auto& [w, sx, sp] : mixture) comps.push_back({w, sx, sp});
        return mixture_product_lemma_check(comps);
      },
      py::arg("mixture"), "mixture: list of (weight, sigma_x, sigma_p)");

  // --- phase space ------------------------------------------------------------
  py::class_<PhasePoint>(m, "PhasePoint")
      .def(py::init([](double x_a, double p_a, double x_b, double p_b) {
             return PhasePoint{x_a, p_a, x_b, p_b};
           }),
           py::arg("x_a"), py::arg("p_a"), py::arg("x_b"), py::arg("p_b"))
      .def_readwrite("x_a", &PhasePoint::x_a)
      .def_readwrite("p_a", &PhasePoint::p_a)
      .def_readwrite("x_b", &PhasePoint::x_b)
      .def_readwrite("p_b", &PhasePoint::p_b);

  py::enum_<Sector>(m, "Sector")
      .value("x", Sector::x)
      .value("p", Sector::p);

  py::class_<SectorGaussian>(m, "SectorGaussian")
      .def_readonly("variance_sum", &SectorGaussian::variance_sum)
      .def_readonly("variance_diff", &SectorGaussian::variance_diff)
      .def_readonly("sector", &SectorGaussian::sector);

  m.def("q_density", &q_density, py::arg("point"), py::arg("p"));
  m.def("q_sector_variances",
        py::overload_cast<const SqueezeParams&, double>(&q_sector_variances),
        py::arg("p"), py::arg("gT"));
  m.def("q_sector_variances",
        py::overload_cast<const SqueezeParams&, double, Sector>(
            &q_sector_variances),
        py::arg("p"), py::arg("gT"), py::arg("sector"));
  m.def("sample_q", &sample_q, py::arg("p"), py::arg("gT"), py::arg("sector"),
        py::arg("n"), py::arg("stream"));
  m.def("wigner_density", &wigner_density, py::arg("point"), py::arg("p"));
  m.def("wigner_marginal_xA_pB", &wigner_marginal_xA_pB, py::arg("p"));

  // --- trajectory simulator ----------------------------------------------------
  py::enum_<Setting>(m, "Setting")
      .value("XX", Setting::xx)
      .value("PP", Setting::pp)
      .value("XP", Setting::xp)
      .value("SINGLE_MODE", Setting::single_mode);

  py::enum_<Scheme>(m, "Scheme")
      .value("EXACT", Scheme::exact)
      .value("EULER_MARUYAMA", Scheme::euler_maruyama);

  py::enum_<Direction>(m, "Direction")
      .value("FORWARD", Direction::forward)
      .value("BACKWARD", Direction::backward);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("squeeze", &SimConfig::squeeze)
      .def_readwrite("g", &SimConfig::g)
      .def_readwrite("T", &SimConfig::T)
      .def_readwrite("dt", &SimConfig::dt)
      .def_readwrite("n_traj", &SimConfig::n_traj)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("setting", &SimConfig::setting)
      .def_readwrite("scheme", &SimConfig::scheme)
      .def_readwrite("x1", &SimConfig::x1)
      .def_readwrite("x2", &SimConfig::x2)
      .def_readwrite("eigenstate_excess", &SimConfig::eigenstate_excess)
      .def("resolved_dt", &SimConfig::resolved_dt)
      .def("n_steps", &SimConfig::n_steps)
      .def("validate", &SimConfig::validate);

  py::class_<TrajectoryEnsemble>(m, "TrajectoryEnsemble")
      .def_readonly("config", &TrajectoryEnsemble::config)
      .def_readonly("times", &TrajectoryEnsemble::times)
      .def_readonly("x_a", &TrajectoryEnsemble::x_a)
      .def_readonly("p_a", &TrajectoryEnsemble::p_a)
      .def_readonly("x_b", &TrajectoryEnsemble::x_b)
      .def_readonly("p_b", &TrajectoryEnsemble::p_b)
      .def_property_readonly("directions",
                             [](const TrajectoryEnsemble& e) {
                               std::vector<std::string> out;
                               for (Direction d : e.directions) {
                                 out.emplace_back(to_string(d));
                               }
                               return out;
                             })
      .def("n_times", &TrajectoryEnsemble::n_times)
      .def("single_mode", &TrajectoryEnsemble::single_mode);

  py::class_<BandReport>(m, "BandReport")
      .def_readonly("band_assignments", &BandReport::band_assignments)
      .def_readonly("band_centers", &BandReport::band_centers)
      .def_readonly("fractions", &BandReport::fractions)
      .def_readonly("residual_spread", &BandReport::residual_spread)
      .def_readonly("t_m", &BandReport::t_m)
      .def_readonly("defect", &BandReport::defect)
      .def_readonly("has_defect", &BandReport::has_defect)
      .def_readonly("warning_unresolved", &BandReport::warning_unresolved);

  m.def("simulate_epr", &simulate_epr, py::arg("config"),
        py::arg("threads") = 1);
  m.def("simulate_schrodinger", &simulate_schrodinger, py::arg("config"),
        py::arg("threads") = 1);
  m.def("simulate_superposition",
        py::overload_cast<const SimConfig&, int>(&simulate_superposition),
        py::arg("config"), py::arg("threads") = 1);
  m.def("classify_bands", &classify_bands, py::arg("ensemble"),
        py::arg("t_m"), py::arg("centers"));
  m.def("xp_inferred_p_a", &xp_inferred_p_a, py::arg("ensemble"),
        py::arg("t_m"));
  m.def("trajectory_csv", &trajectory_csv, py::arg("ensemble"));
}
