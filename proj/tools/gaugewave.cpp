#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "gaugewave/commands.hpp"
#include "gaugewave/fft.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral Maxwell-Klein-Gordon / Maxwell-Chern-Simons-Higgs toolkit"};
  app.require_subcommand(1);

  std::string config;
  auto* evolve = app.add_subcommand("evolve", "run the configured evolution");
  evolve->add_option("config", config, "config file")->required();

  std::string suite;
  auto* check = app.add_subcommand("check", "run an invariant suite: identities, gauge, bounds, weights, crossval");
  check->add_option("suite", suite)->required();
  check->add_option("config", config, "config file")->required();

  std::vector<std::string> snapshots;
  std::vector<double> s_list, b_list;
  auto* norms = app.add_subcommand("norms", "Sobolev and X^{s,b} diagnostics of snapshots");
  norms->add_option("snapshots", snapshots, "snapshot file(s); a uniform time series when --b is given")->required();
  norms->add_option("--s", s_list, "Sobolev exponents")->delimiter(',');
  norms->add_option("--b", b_list, "modulation exponents")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gaugewave::cli::config_error;
  }

  if (const char* t = std::getenv("GAUGEWAVE_THREADS")) {
    const int n = std::atoi(t);
    if (n < 1) {
      std::cerr << "GAUGEWAVE_THREADS must be a positive integer\n";
      return gaugewave::cli::config_error;
    }
    gaugewave::set_fft_threads(n);
  }

  if (*evolve) return gaugewave::cli::cmd_evolve(config, std::cout, std::cerr);
  if (*check) return gaugewave::cli::cmd_check(suite, config, std::cout, std::cerr);
  std::vector<std::filesystem::path> paths(snapshots.begin(), snapshots.end());
  return gaugewave::cli::cmd_norms(paths, s_list, b_list, std::cout, std::cerr);
}
