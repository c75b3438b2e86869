#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace calib::cli {

inline constexpr std::uint64_t kDefaultSeed = 1;

// Everything a command run depends on.  Commands are deterministic functions
// of this struct plus the input file bytes; reruns emit identical output.
struct RunConfig {
  std::string command;
  std::string input_path;
  std::vector<std::string> measures;  // empty = all known measures
  double alpha = 1.0;
  std::size_t bins = 0;  // 0 = per-measure default
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 0;  // 0 = per-command default
  std::string beta = "auto";
  std::string format = "json";  // json | csv
  std::string output_path;      // empty = stdout
  std::vector<std::size_t> t_grid;  // empty = per-command default
  std::vector<double> gammas;       // empty = per-command default
  std::string scaling_source = "miscalibrated";  // or "calibrated"
};

// Names accepted by --measures, in canonical order.
const std::vector<std::string>& known_measure_names();

void cmd_measure(const RunConfig& config, std::ostream& out);
void cmd_table1(const RunConfig& config, std::ostream& out);
void cmd_truthfulness(const RunConfig& config, std::ostream& out);
void cmd_scaling(const RunConfig& config, std::ostream& out);
void cmd_test(const RunConfig& config, std::ostream& out);
void cmd_avg_dominance(const RunConfig& config, std::ostream& out);
void cmd_decompose(const RunConfig& config, std::ostream& out);

// Dispatches on config.command and resolves the output stream (file or
// `fallback`).  Throws calib::Error subclasses on any failure.
void run_command(const RunConfig& config, std::ostream& fallback);

}  // namespace calib::cli
