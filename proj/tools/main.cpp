#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sampler_cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Non-reversible constrained sampler on level sets"};
  app.require_subcommand(1);

  sampler_cli::ExperimentArgs experiment;
  std::string experiment_out;
  int experiment_threads = 0;
  auto* cmd_experiment = app.add_subcommand("experiment", "Run a configured sampling experiment");
  cmd_experiment->add_option("--config", experiment.config, "key = value configuration file")
      ->required();
  auto* out_option = cmd_experiment->add_option("--out", experiment_out, "Output directory");
  auto* threads_option =
      cmd_experiment->add_option("--threads", experiment_threads, "Worker threads")
          ->check(CLI::PositiveNumber);

  sampler_cli::VerifyArgs verify;
  std::string verify_out = ".";
  auto* cmd_verify = app.add_subcommand("verify", "Run the numerical identity suite");
  cmd_verify->add_option("--seed", verify.seed, "Seed of the sampled points");
  cmd_verify->add_option("--points", verify.points, "Number of torus points")
      ->check(CLI::NonNegativeNumber);
  cmd_verify->add_option("--out", verify_out, "Directory for verify.csv");
  cmd_verify->add_flag("--inject-fault", verify.inject_fault,
                       "Compare against the kernel with A negated (negative control)");

  std::string test;
  int grid = 512;
  auto* cmd_quadrature = app.add_subcommand("quadrature", "Reference value E_mu[f] by quadrature");
  cmd_quadrature->add_option("--test", test, "test1, test2 or uniform")->required();
  cmd_quadrature->add_option("--grid", grid, "Grid points per angle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : sampler_cli::kConfigError;
  }

  if (cmd_experiment->parsed()) {
    if (*out_option) experiment.out_dir = experiment_out;
    if (*threads_option) experiment.threads = experiment_threads;
    return sampler_cli::cmd_experiment(experiment, std::cerr);
  }
  if (cmd_verify->parsed()) {
    verify.out_dir = verify_out;
    return sampler_cli::cmd_verify(verify, std::cout);
  }
  return sampler_cli::cmd_quadrature(test, grid, std::cout, std::cerr);
}
