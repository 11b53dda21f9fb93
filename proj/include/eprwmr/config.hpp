#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eprwmr {

/// Configuration-level failure (bad mode, malformed JSON, unknown key);
/// the CLI maps it to the validation exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { analytics, error, criterion, simulate, reproduce };

const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

/// Fully flat experiment description. Optionals distinguish "user set it"
/// from "use the mode's default"; CLI flags override file values.
struct ExperimentConfig {
  Mode mode = Mode::analytics;
  std::vector<double> r_list;  // empty -> per-mode default

  // Binning / criterion knobs (quadrature units).
  std::optional<double> Delta, delta, x1, G, Delta_p;
  std::optional<std::string> case_label;  // "I" or "II" presets

  // Simulation knobs.
  std::optional<double> g, T, gT, dt, x2, v_e, p_b, t_m;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> setting, scheme, figure;

  /// Output directory; empty falls back to $EPRWMR_OUT, then ".".
  std::optional<std::string> out;
  int threads = 1;
  bool print_config = false;
};

/// Parse a flat JSON config file; unknown keys and non-flat values are
/// rejected with a ConfigError naming the offender.
ExperimentConfig parse_config_file(const std::string& path);

/// "--r 1,2,3" -> {1,2,3}; rejects empty or non-numeric entries.
std::vector<double> parse_r_list(const std::string& csv);

/// The fully-resolved computational configuration as flat JSON, for
/// --print-config sidecars. Excludes out/threads/print_config so the same
/// experiment yields the same bytes wherever and however it runs.
std::string resolved_config_json(const ExperimentConfig& c);

}  // namespace eprwmr
