#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paim/ipc.hpp"
#include "paim/paim.hpp"
#include "paim/run_record.hpp"
#include "paim/targets.hpp"

namespace paim {

enum class Algorithm { paim, ipc, both };

struct GridSpec {
  Vector lower;
  Vector upper;
  std::size_t points_per_axis = 2001;
};

// Ground truth for E[X]: either given, or computed by grid quadrature.
struct TruthSpec {
  std::optional<Vector> value;
  std::optional<GridSpec> grid;
};

struct InitBox {
  Vector lower{-15.0, -15.0};
  Vector upper{15.0, 15.0};
  double sigma = 10.0;
};

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::both;
  nlohmann::json target = {{"kind", "banana"}};
  // Sampler settings; init and seed are filled per replication.
  PaimConfig sampler;
  InitBox init;
  std::size_t replications = 1;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir = "paim_out";
  TruthSpec truth;
};

// Throws std::invalid_argument with a one-line diagnostic on bad input.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// "banana" | "gaussian" | "gaussian_mixture" with their parameter blocks.
TargetDensity build_target(const nlohmann::json& desc);

Vector resolve_truth(const TruthSpec& truth, const TargetDensity& target);

// Uniform initial states and means in the box, covariances sigma^2 I.
InitialConditions random_init(std::span<const double> box_lower, std::span<const double> box_upper,
                              double sigma, std::size_t chains, RandomStream& rng);

struct AlgorithmSummary {
  double mse = 0.0;
  std::vector<Vector> estimates;
  std::vector<std::vector<std::size_t>> budgets;
  std::vector<std::size_t> total_steps;
  std::vector<double> acceptance_rates;
  std::vector<std::size_t> final_active;
};

struct SummaryReport {
  Vector truth;
  std::size_t replications = 0;
  std::optional<AlgorithmSummary> paim;
  std::optional<AlgorithmSummary> ipc;
  // 100 (MSE_ipc - MSE_paim) / MSE_ipc; only when both ran.
  std::optional<double> reduction_percent;
};

double reduction_percent(double mse_ipc, double mse_paim);

struct ReplicationResult {
  SummaryReport report;
  // Records of replication 0, kept for file output.
  std::optional<RunRecord> first_paim;
  std::optional<RunRecord> first_ipc;
};

// R seed-derived replications. Within replication r both algorithms share the
// initial conditions and the sampling seed. Replications run concurrently
// when config.sampler.policy is parallel; results do not depend on it.
ReplicationResult replicate(const ExperimentConfig& config);
ReplicationResult replicate(const ExperimentConfig& config, const TargetDensity& target,
                            const Vector& truth);

struct Table1Cell {
  std::size_t chains = 0;
  std::int64_t train_steps = 0;
  double mse_paim = 0.0;
  double mse_ipc = 0.0;
  double reduction_percent = 0.0;
};

struct Table1Options {
  std::vector<std::size_t> chains{5, 10, 50, 100};
  std::vector<std::int64_t> train_steps{1, 10, 20};
  std::size_t replications = 500;
  std::size_t samples = 5000;
  double epsilon = 0.4;
  double sigma = 10.0;
  ActivationRule activation = ActivationRule::floor;
  std::uint64_t base_seed = 1;
  bool parallel = true;
  GridSpec truth_grid{{-15.0, -15.0}, {15.0, 15.0}, 2001};
};

// Banana target, both algorithms, every (N, T_train) pair. Cells share the
// replication seeds, so differences between cells come from the settings.
std::vector<Table1Cell> run_table1(const Table1Options& options);
std::string format_table1(const Table1Options& options, const std::vector<Table1Cell>& cells);

}  // namespace paim
