// Command-line front end: flag parsing and error reporting only; all command
// logic lives in the library so it stays testable.
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "calib/cli.hpp"
#include "calib/error.hpp"

namespace {

std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ','))
    if (!item.empty()) items.push_back(item);
  return items;
}

void add_common_flags(CLI::App* cmd, calib::cli::RunConfig& config,
                      std::string& measures_raw, std::string& t_grid_raw,
                      std::string& gammas_raw) {
  cmd->add_option("--input", config.input_path, "CSV file (prediction,target)");
  cmd->add_option("--measures", measures_raw,
                  "comma-separated measure names (default: all)");
  cmd->add_option("--alpha", config.alpha, "exponent for ECE-style measures");
  cmd->add_option("--bins", config.bins, "bin count for binned measures");
  cmd->add_option("--seed", config.seed, "master seed");
  cmd->add_option("--trials", config.trials, "trial/case count");
  cmd->add_option("--beta", config.beta,
                  "acceptance threshold: auto (=1/T) or a number");
  cmd->add_option("--format", config.format, "output format: json or csv");
  cmd->add_option("--output", config.output_path,
                  "write output to this file instead of stdout");
  cmd->add_option("--tgrid", t_grid_raw, "comma-separated sample sizes");
  cmd->add_option("--gammas", gammas_raw, "comma-separated bias values");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calibration-measures toolkit"};
  app.require_subcommand(1);

  calib::cli::RunConfig config;
  std::string measures_raw, t_grid_raw, gammas_raw;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"measure", "evaluate calibration measures on a sample CSV"},
      {"table1", "reference grid of per-realization and expected errors"},
      {"truthfulness", "search for predictors beating the truthful one"},
      {"scaling", "sample-complexity scaling of the two-bin error"},
      {"test", "run the calibration test or its validity sweep"},
      {"avg-dominance", "averaging never hurts the classical measures"},
      {"decompose", "expected error versus its closed-form decomposition"}};
  for (const auto& [name, description] : commands) {
    CLI::App* cmd = app.add_subcommand(name, description);
    add_common_flags(cmd, config, measures_raw, t_grid_raw, gammas_raw);
    if (name == "scaling")
      cmd->add_option("--source", config.scaling_source,
                      "calibrated or miscalibrated");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    config.command = app.get_subcommands().front()->get_name();
    config.measures = split_csv_list(measures_raw);
    for (const std::string& t : split_csv_list(t_grid_raw))
      config.t_grid.push_back(std::stoull(t));
    for (const std::string& g : split_csv_list(gammas_raw))
      config.gammas.push_back(std::stod(g));
    calib::cli::run_command(config, std::cout);
  } catch (const calib::Error& e) {
    std::cerr << "error[" << e.code() << "]: " << e.message() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error[Internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
