#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "eprwmr/fbsde.hpp"

namespace eprwmr {

/// Raised when an artifact cannot be written (unwritable directory, full
/// disk); the CLI maps it to the validation exit code with its own message.
struct WriteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Canonical float formatting for CSV artifacts: 9 significant digits.
std::string fmt9(double v);

/// A parsed CSV with string cells; serialization is the exact inverse of
/// parsing, so artifacts can be checked to round-trip byte-identically.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);
CsvTable read_csv_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path,
                     const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

/// Trajectory table, one row per (t, run) grouped by time:
///   two-mode:    t,run,xA,pA,xB,pB,dir_xA,dir_pA,dir_xB,dir_pB
///   single-mode: t,run,x,p,dir_x,dir_p
std::string trajectory_csv(const TrajectoryEnsemble& e);

}  // namespace eprwmr
