#pragma once

#include <ostream>

#include "eprwmr/config.hpp"

namespace eprwmr {

/// Executes one experiment: writes all artifacts into c.out_dir and prints a
/// one-line summary per artifact to `log`. Throws on failure — ConfigError /
/// std::invalid_argument for validation problems, std::domain_error for
/// numeric-domain problems, WriteError for unwritable outputs; the CLI maps
/// these to exit codes.
void run_experiment(const ExperimentConfig& c, std::ostream& log);

}  // namespace eprwmr
