// Command-line front end: run an experiment config, reproduce the MSE
// reduction table, or print the grid ground truth of a target.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <sstream>

#include "paim/harness.hpp"
#include "paim/outputs.hpp"
#include "paim/targets.hpp"

namespace {

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                std::optional<std::string> out_dir) {
  auto config = paim::load_experiment_config(config_path);
  if (seed) config.base_seed = *seed;
  if (out_dir) config.output_dir = *out_dir;

  const auto result = paim::replicate(config);
  const auto& report = result.report;
  if (result.first_paim) {
    paim::emit_outputs(*result.first_paim, report, config.output_dir);
    if (result.first_ipc) paim::emit_outputs(*result.first_ipc, report, config.output_dir / "ipc");
  } else {
    paim::emit_outputs(*result.first_ipc, report, config.output_dir);
  }

  std::cout << "truth:";
  for (double v : report.truth) std::cout << ' ' << paim::format_real(v);
  std::cout << '\n';
  if (report.paim) std::cout << "paim mse: " << paim::format_real(report.paim->mse) << '\n';
  if (report.ipc) std::cout << "ipc mse: " << paim::format_real(report.ipc->mse) << '\n';
  if (report.reduction_percent)
    std::cout << "reduction: " << paim::format_real(*report.reduction_percent) << "%\n";
  std::cout << "outputs written to " << config.output_dir.string() << '\n';
  return 0;
}

int table1_command(const paim::Table1Options& options) {
  const auto cells = paim::run_table1(options);
  std::cout << paim::format_table1(options, cells);
  return 0;
}

int oracle_command(const std::string& target_name, const std::vector<double>& bounds, std::size_t points) {
  if (target_name != "banana")
    throw std::invalid_argument("oracle: only the banana target has built-in parameters; use a run config for others");
  if (bounds.size() != 2) throw std::invalid_argument("oracle: --bounds takes LOW HIGH");
  const auto target = paim::make_banana_target();
  const paim::Vector lower(target.dim(), bounds[0]);
  const paim::Vector upper(target.dim(), bounds[1]);
  const auto mean = paim::grid_expectation(target, lower, upper, points);
  for (std::size_t i = 0; i < mean.size(); ++i)
    std::cout << (i ? " " : "") << paim::format_real(mean[i]);
  std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel adaptive independent Metropolis sampler"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--seed", seed, "Override base_seed");
  run->add_option("--out", out_dir, "Override output_dir");

  auto* bench = app.add_subcommand("benchmark", "Reproduction benchmarks");
  bench->require_subcommand(1);
  auto* table1 = bench->add_subcommand("table1", "MSE reduction table on the banana target");
  paim::Table1Options t1;
  std::string activation = "floor";
  bool serial = false;
  table1->add_option("--n", t1.chains, "Chain counts")->delimiter(',');
  table1->add_option("--ttrain", t1.train_steps, "Training steps")->delimiter(',');
  table1->add_option("--reps", t1.replications, "Replications per cell");
  table1->add_option("--samples", t1.samples, "Total samples L per run");
  table1->add_option("--epsilon", t1.epsilon, "Covariance regularization");
  table1->add_option("--seed", t1.base_seed, "Base seed");
  table1->add_option("--activation", activation, "floor or ceil")->check(CLI::IsMember({"floor", "ceil"}));
  table1->add_flag("--serial", serial, "Run replications on one thread");

  auto* oracle = app.add_subcommand("oracle", "Grid-quadrature ground truth E[X]");
  std::string target_name = "banana";
  std::vector<double> bounds{-15.0, 15.0};
  std::size_t points = 2001;
  oracle->add_option("--target", target_name, "Target name");
  oracle->add_option("--bounds", bounds, "LOW HIGH, applied to every axis")->expected(2);
  oracle->add_option("--points", points, "Grid points per axis");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(config_path, seed, out_dir);
    if (*table1) {
      t1.activation = activation == "ceil" ? paim::ActivationRule::ceil : paim::ActivationRule::floor;
      t1.parallel = !serial;
      return table1_command(t1);
    }
    if (*oracle) return oracle_command(target_name, bounds, points);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
